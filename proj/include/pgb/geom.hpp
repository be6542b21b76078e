#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <span>
#include <stdexcept>
#include <vector>

namespace pgb {

using Mat3 = Eigen::Matrix3d;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pinhole intrinsics (pixels). fx, fy must be positive.
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  Mat3 matrix() const {
    Mat3 k;
    k << fx, 0, cx, 0, fy, cy, 0, 0, 1;
    return k;
  }
  Mat3 inverse_matrix() const {
    Mat3 k_inv;
    k_inv << 1.0 / fx, 0, -cx / fx, 0, 1.0 / fy, -cy / fy, 0, 0, 1;
    return k_inv;
  }
  Vec2 normalize(const Vec2& px) const {
    return {(px.x() - cx) / fx, (px.y() - cy) / fy};
  }
  Vec2 denormalize(const Vec2& n) const {
    return {n.x() * fx + cx, n.y() * fy + cy};
  }
};

/// Relative pose between two views: x_dst = R x_src + t with t a unit-norm
/// direction (scale is unobservable from two views). A zero translation marks
/// the degenerate case produced by composing a loop back to its start; such
/// poses are never stored as graph edges.
struct RelativePose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3(0, 0, 1);

  bool degenerate_translation() const { return translation.isZero(0.0); }

  static RelativePose identity_pose() {
    RelativePose p;
    p.translation.setZero();
    return p;
  }
};

/// A pair of image points in pixel coordinates. Index fields refer back into
/// the per-image keypoint arrays; snn_ratio carries the descriptor ratio of
/// the match that produced the pair (1 when unknown).
struct Correspondence {
  Vec2 p1 = Vec2::Zero();
  Vec2 p2 = Vec2::Zero();
  int index1 = -1;
  int index2 = -1;
  double snn_ratio = 1.0;
};

bool is_rotation_matrix(const Mat3& m, double tol = 1e-9);
bool is_essential_matrix(const Mat3& e, double tol = 1e-6);
bool has_rank_two(const Mat3& m, double tol = 1e-9);

Mat3 skew_symmetric(const Vec3& v);

/// Inverse pose: (R, t) -> (R^T, -R^T t). Unit norm is preserved.
RelativePose invert(const RelativePose& pose);

/// compose(a, b) applies b first, then a: R = R_a R_b, t = R_a t_b + t_a
/// renormalized. A composed translation with norm below 1e-12 yields the
/// degenerate zero translation, which callers must check before storing.
RelativePose compose(const RelativePose& a, const RelativePose& b);

/// E = [t]x R for the pose mapping view-1 points into view 2, so that
/// x2^T E x1 = 0 in normalized coordinates.
Mat3 essential_from_pose(const RelativePose& pose);

/// F = K2^-T E K1^-1; x2^T F x1 = 0 in pixel coordinates.
Mat3 fundamental_from_essential(const Mat3& e, const CameraIntrinsics& k1,
                                const CameraIntrinsics& k2);

/// First-order Sampson approximation of the geometric epipolar distance, in
/// pixels. Throws GeometryError when the denominator degenerates (both
/// epipolar line gradients vanish).
double sampson_distance(const Vec2& p1, const Vec2& p2, const Mat3& f);

/// Non-throwing variant used in scoring loops: degenerate denominators map to
/// +infinity so the point never counts as an inlier.
double sampson_distance_or_inf(const Vec2& p1, const Vec2& p2,
                               const Mat3& f) noexcept;

struct TriangulationResult {
  Vec3 point = Vec3::Zero();
  double depth1 = 0.0;
  double depth2 = 0.0;
  double max_reprojection_error_px = 0.0;
};

/// DLT triangulation in the first camera's frame with unit baseline. Throws
/// GeometryError when the viewing rays are parallel (angle < 1e-6 rad).
TriangulationResult triangulate(const Vec2& p1, const Vec2& p2,
                                const RelativePose& pose,
                                const CameraIntrinsics& k1,
                                const CameraIntrinsics& k2);

/// Selects the one of the four (R, t) decompositions of E with the most
/// correspondences triangulating in front of both cameras. At most 64
/// correspondences are sampled for the vote. Throws GeometryError when no
/// decomposition has positive-depth support.
RelativePose decompose_essential(const Mat3& e,
                                 std::span<const Correspondence> pixel_pairs,
                                 const CameraIntrinsics& k1,
                                 const CameraIntrinsics& k2);

/// Angle of the relative rotation a^T b, in degrees.
double rotation_error_deg(const Mat3& a, const Mat3& b);

/// Angle between translation directions, in degrees; sign-ambiguous, so the
/// minimum against -b is taken.
double translation_angle_error_deg(const Vec3& a, const Vec3& b);

}  // namespace pgb
