#include "pgb/geom.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pgb {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kRadToDeg = 180.0 / kPi;
}  // namespace

bool is_rotation_matrix(const Mat3& m, double tol) {
  const Mat3 mtm = m.transpose() * m;
  if ((mtm - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(m.determinant() - 1.0) <= tol;
}

bool has_rank_two(const Mat3& m, double tol) {
  Eigen::JacobiSVD<Mat3> svd(m);
  const Vec3 s = svd.singularValues();
  if (s(0) <= 0.0) return false;
  return s(1) / s(0) > tol && s(2) / s(0) <= tol;
}

bool is_essential_matrix(const Mat3& e, double tol) {
  Eigen::JacobiSVD<Mat3> svd(e);
  const Vec3 s = svd.singularValues();
  if (s(0) <= 0.0) return false;
  // After scale normalization the first two singular values are equal and the
  // third vanishes.
  return std::abs(s(0) - s(1)) / s(0) <= tol && s(2) / s(0) <= tol;
}

Mat3 skew_symmetric(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

RelativePose invert(const RelativePose& pose) {
  RelativePose inv;
  inv.rotation = pose.rotation.transpose();
  inv.translation = -(inv.rotation * pose.translation);
  const double norm = inv.translation.norm();
  if (norm > 0.0) inv.translation /= norm;
  return inv;
}

RelativePose compose(const RelativePose& a, const RelativePose& b) {
  RelativePose out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  const double norm = out.translation.norm();
  if (norm < 1e-12) {
    out.translation.setZero();
  } else {
    out.translation /= norm;
  }
  return out;
}

Mat3 essential_from_pose(const RelativePose& pose) {
  return skew_symmetric(pose.translation) * pose.rotation;
}

Mat3 fundamental_from_essential(const Mat3& e, const CameraIntrinsics& k1,
                                const CameraIntrinsics& k2) {
  return k2.inverse_matrix().transpose() * e * k1.inverse_matrix();
}

namespace {

inline double sampson_impl(const Vec2& p1, const Vec2& p2, const Mat3& f,
                           bool* degenerate) {
  const Vec3 x1(p1.x(), p1.y(), 1.0);
  const Vec3 x2(p2.x(), p2.y(), 1.0);
  const Vec3 fx1 = f * x1;
  const Vec3 ftx2 = f.transpose() * x2;
  const double numerator = x2.dot(fx1);
  const double denom = fx1.x() * fx1.x() + fx1.y() * fx1.y() +
                       ftx2.x() * ftx2.x() + ftx2.y() * ftx2.y();
  if (denom < 1e-16) {
    *degenerate = true;
    return std::numeric_limits<double>::infinity();
  }
  *degenerate = false;
  return std::abs(numerator) / std::sqrt(denom);
}

}  // namespace

double sampson_distance(const Vec2& p1, const Vec2& p2, const Mat3& f) {
  bool degenerate = false;
  const double d = sampson_impl(p1, p2, f, &degenerate);
  if (degenerate) {
    throw GeometryError("sampson_distance: degenerate gradient");
  }
  return d;
}

double sampson_distance_or_inf(const Vec2& p1, const Vec2& p2,
                               const Mat3& f) noexcept {
  bool degenerate = false;
  return sampson_impl(p1, p2, f, &degenerate);
}

TriangulationResult triangulate(const Vec2& p1, const Vec2& p2,
                                const RelativePose& pose,
                                const CameraIntrinsics& k1,
                                const CameraIntrinsics& k2) {
  const Vec3 ray1 = Vec3(k1.normalize(p1).x(), k1.normalize(p1).y(), 1.0);
  const Vec3 ray2_in_2 = Vec3(k2.normalize(p2).x(), k2.normalize(p2).y(), 1.0);
  // Both rays expressed in camera-1 coordinates. Camera 2 sits at -R^T t.
  const Vec3 ray2 = pose.rotation.transpose() * ray2_in_2;
  const Vec3 center2 = -(pose.rotation.transpose() * pose.translation);

  const double angle =
      std::acos(std::clamp(ray1.normalized().dot(ray2.normalized()), -1.0, 1.0));
  if (angle < 1e-6) {
    throw GeometryError("triangulate: parallel rays");
  }

  // Closest point between the two rays: X = a*ray1 and X = center2 + b*ray2.
  Eigen::Matrix<double, 3, 2> a;
  a.col(0) = ray1;
  a.col(1) = -ray2;
  const Eigen::Vector2d ab =
      a.colPivHouseholderQr().solve(center2);
  const Vec3 x1 = ab(0) * ray1;
  const Vec3 x2 = center2 + ab(1) * ray2;
  TriangulationResult result;
  result.point = 0.5 * (x1 + x2);

  result.depth1 = result.point.z();
  const Vec3 in_cam2 = pose.rotation * result.point + pose.translation;
  result.depth2 = in_cam2.z();

  double err = 0.0;
  if (result.depth1 > 0.0) {
    const Vec2 proj1 = k1.denormalize(result.point.hnormalized());
    err = std::max(err, (proj1 - p1).norm());
  }
  if (result.depth2 > 0.0) {
    const Vec2 proj2 = k2.denormalize(in_cam2.hnormalized());
    err = std::max(err, (proj2 - p2).norm());
  }
  result.max_reprojection_error_px = err;
  return result;
}

RelativePose decompose_essential(const Mat3& e,
                                 std::span<const Correspondence> pixel_pairs,
                                 const CameraIntrinsics& k1,
                                 const CameraIntrinsics& k2) {
  if (pixel_pairs.empty()) {
    throw GeometryError("decompose_essential: no correspondences");
  }
  Eigen::JacobiSVD<Mat3> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 v = svd.matrixV();
  if (u.determinant() < 0) u.col(2) *= -1.0;
  if (v.determinant() < 0) v.col(2) *= -1.0;

  Mat3 w;
  w << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  const Mat3 r1 = u * w * v.transpose();
  const Mat3 r2 = u * w.transpose() * v.transpose();
  const Vec3 t = u.col(2);

  RelativePose candidates[4];
  candidates[0] = {r1, t};
  candidates[1] = {r1, -t};
  candidates[2] = {r2, t};
  candidates[3] = {r2, -t};

  // A handful of points disambiguates the four decompositions; sample evenly
  // instead of voting over everything.
  const size_t vote_count = std::min<size_t>(pixel_pairs.size(), 64);
  const size_t stride = std::max<size_t>(pixel_pairs.size() / vote_count, 1);

  int best_votes = 0;
  int best_index = -1;
  for (int c = 0; c < 4; ++c) {
    int votes = 0;
    for (size_t i = 0; i < pixel_pairs.size(); i += stride) {
      const Correspondence& pair = pixel_pairs[i];
      try {
        const TriangulationResult tri =
            triangulate(pair.p1, pair.p2, candidates[c], k1, k2);
        if (tri.depth1 > 0.0 && tri.depth2 > 0.0) ++votes;
      } catch (const GeometryError&) {
        // Parallel rays contribute no vote.
      }
    }
    if (votes > best_votes) {
      best_votes = votes;
      best_index = c;
    }
  }
  if (best_index < 0) {
    throw GeometryError("decompose_essential: no cheirality support");
  }
  return candidates[best_index];
}

double rotation_error_deg(const Mat3& a, const Mat3& b) {
  const Mat3 rel = a.transpose() * b;
  const double cos_angle = std::clamp((rel.trace() - 1.0) * 0.5, -1.0, 1.0);
  return std::acos(cos_angle) * kRadToDeg;
}

double translation_angle_error_deg(const Vec3& a, const Vec3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = std::clamp(std::abs(a.dot(b)) / (na * nb), 0.0, 1.0);
  return std::acos(c) * kRadToDeg;
}

}  // namespace pgb
