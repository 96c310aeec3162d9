#pragma once
// Shared scalar types, tolerances, error reporting, deterministic RNG
// streams and a few small dense linear-algebra helpers.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace polynorm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// All geometry is normalized to centroid-at-origin / unit circumradius on
// construction, so the defaults below are absolute, scale-free bands.
struct Tolerances {
  double residual = 1e-9;    // hyperplane / affine-hull membership residual
  double margin = 1e-9;      // relint + slack marginality band
  double genericity = 1e-6;  // parallel/orthogonal residual threshold
  double classify = 1e-6;    // spherical triangle verdict separation
};

inline const Tolerances& default_tol() {
  static const Tolerances t{};
  return t;
}

enum class Errc {
  degenerate_input,
  not_simple,
  not_in_affine_hull,
  point_not_interior,
  point_not_in_cone,
  marginal_records,
  non_generic_sample,
  degenerate_triangle,
  precondition,
  non_convergence,
  inconsistent_dihedral,
  signature_mismatch,
  generation_failed,
  invalid_input,
  consistency_alarm,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::degenerate_input: return "degenerate_input";
    case Errc::not_simple: return "not_simple";
    case Errc::not_in_affine_hull: return "not_in_affine_hull";
    case Errc::point_not_interior: return "point_not_interior";
    case Errc::point_not_in_cone: return "point_not_in_cone";
    case Errc::marginal_records: return "marginal_records";
    case Errc::non_generic_sample: return "non_generic_sample";
    case Errc::degenerate_triangle: return "degenerate_triangle";
    case Errc::precondition: return "precondition";
    case Errc::non_convergence: return "non_convergence";
    case Errc::inconsistent_dihedral: return "inconsistent_dihedral";
    case Errc::signature_mismatch: return "signature_mismatch";
    case Errc::generation_failed: return "generation_failed";
    case Errc::invalid_input: return "invalid_input";
    case Errc::consistency_alarm: return "consistency_alarm";
  }
  return "unknown";
}

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) {
  throw Error(c, msg);
}

inline void require(bool ok, Errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

// ---------------------------------------------------------------------------
// Deterministic splittable RNG.  Every random choice in the library flows
// from one 64-bit seed; independent substreams are derived as pure functions
// of (seed, key), so results do not depend on evaluation order or workers.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed)
      : seed_(seed), eng_(splitmix64(splitmix64(seed) ^ 0xabcdef1234567890ULL)) {}

  // Independent substream; pure function of (seed, key).
  RngStream child(std::uint64_t key) const {
    return RngStream(splitmix64(seed_ ^ splitmix64(key + 0x5851f42d4c957f2dULL)));
  }
  RngStream child2(std::uint64_t a, std::uint64_t b) const {
    return child(splitmix64(a) ^ (b * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL));
  }

  std::uint64_t seed() const { return seed_; }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(eng_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }

  Vec gaussian_vec(int k) {
    Vec v(k);
    for (int i = 0; i < k; ++i) v[i] = normal();
    return v;
  }
  Vec unit_vec(int k) {
    for (;;) {
      Vec v = gaussian_vec(k);
      double n = v.norm();
      if (n > 1e-12) return v / n;
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Small linear-algebra helpers.

inline Vec unit(const Vec& v) {
  double n = v.norm();
  require(n > 1e-14, Errc::degenerate_input, "cannot normalize zero vector");
  return v / n;
}

// Orthonormal tangent + normal bases of the affine hull of a point set
// (rows of `pts`).  Rank is decided by singular values relative to `tol`
// (absolute; geometry is unit-scale).
struct AffineBasis {
  Vec point;    // base point (centroid)
  Mat tangent;  // n x r, orthonormal
  Mat normal;   // n x (n-r), orthonormal
  int rank = 0;
};

inline AffineBasis affine_basis(const Mat& pts, double tol) {
  const int m = static_cast<int>(pts.rows());
  const int n = static_cast<int>(pts.cols());
  require(m >= 1, Errc::degenerate_input, "affine_basis: empty point set");
  AffineBasis out;
  out.point = pts.colwise().mean().transpose();
  if (m == 1) {
    out.tangent = Mat(n, 0);
    out.normal = Mat::Identity(n, n);
    out.rank = 0;
    return out;
  }
  Mat centered = pts.transpose();  // n x m
  centered.colwise() -= out.point;
  Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++r;
  out.rank = r;
  out.tangent = svd.matrixU().leftCols(r);
  out.normal = svd.matrixU().rightCols(n - r);
  return out;
}

// Orthogonal projection of y onto the affine subspace {p + span(U)}.
inline Vec project_affine(const Vec& y, const Vec& p, const Mat& U) {
  if (U.cols() == 0) return p;
  return p + U * (U.transpose() * (y - p));
}

// Smallest enclosing ball of a small point set (deterministic Welzl).
struct Ball {
  Vec center;
  double radius = 0.0;
};

namespace detail {

// Circumball of an affinely independent support set (1..n+1 points).
inline Ball circumball(const std::vector<Vec>& support) {
  const int m = static_cast<int>(support.size());
  Ball b;
  if (m == 0) return b;
  if (m == 1) {
    b.center = support[0];
    return b;
  }
  const int n = static_cast<int>(support[0].size());
  Mat A(m - 1, n);
  Vec rhs(m - 1);
  for (int i = 1; i < m; ++i) {
    Vec d = support[i] - support[0];
    A.row(i - 1) = d.transpose();
    rhs[i - 1] = 0.5 * (support[i].squaredNorm() - support[0].squaredNorm());
  }
  // Center lies in the affine hull of the support set.
  Vec c = A.colPivHouseholderQr().solve(rhs);
  b.center = c;
  b.radius = (support[0] - c).norm();
  return b;
}

inline bool in_ball(const Ball& b, const Vec& p, double slack = 1e-10) {
  if (b.center.size() == 0) return false;
  return (p - b.center).norm() <= b.radius * (1.0 + slack) + slack;
}

inline Ball welzl_rec(std::vector<Vec>& pts, int end, std::vector<Vec>& support,
                      int n) {
  if (end == 0 || static_cast<int>(support.size()) == n + 1)
    return circumball(support);
  Ball b = welzl_rec(pts, end - 1, support, n);
  const Vec& p = pts[end - 1];
  if (in_ball(b, p)) return b;
  support.push_back(p);
  b = welzl_rec(pts, end - 1, support, n);
  support.pop_back();
  return b;
}

}  // namespace detail

inline Ball welzl_ball(const Mat& pts) {
  const int m = static_cast<int>(pts.rows());
  const int n = static_cast<int>(pts.cols());
  require(m >= 1, Errc::degenerate_input, "welzl_ball: empty point set");
  std::vector<Vec> v(m);
  for (int i = 0; i < m; ++i) v[i] = pts.row(i).transpose();
  // Deterministic shuffle, fixed seed: order affects recursion depth only.
  std::mt19937_64 eng(0x5eedba11);
  std::shuffle(v.begin(), v.end(), eng);
  std::vector<Vec> support;
  return detail::welzl_rec(v, m, support, n);
}

// Enumerate k-subsets of {0..m-1} in lexicographic order.
template <typename F>
inline void for_each_subset(int m, int k, F&& fn) {
  if (k < 0 || k > m) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(const_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Hemisphere margin of the unit rows of `pts`: max over unit u of
// min_i <u, p_i>.  Negative exactly when the rows positively span R^n, and
// then equal to minus the depth of the origin inside their convex hull (the
// depth is the smallest distance from the origin to a supporting hyperplane
// of the hull, found by brute-force enumeration).  When the origin is not
// interior the value is nonnegative but only a lower bound; callers use the
// sign and the negative magnitude, which are exact.
struct HemisphereCheck {
  Vec axis;            // a maximizing (or witness) direction u
  double margin = 0.0;
};

inline HemisphereCheck hemisphere_check(const Mat& pts) {
  const int m = static_cast<int>(pts.rows());
  const int n = static_cast<int>(pts.cols());
  require(m >= 1, Errc::degenerate_input, "hemisphere_check: empty point set");
  HemisphereCheck out;

  // Rows confined to a proper subspace: any orthogonal direction gives
  // min_i <u, p_i> = 0, so the rows cannot positively span.
  Eigen::JacobiSVD<Mat> full(pts, Eigen::ComputeFullV);
  double smax = full.singularValues()(0);
  if (m < n || full.singularValues()(n - 1) <= smax * 1e-12) {
    out.axis = full.matrixV().col(n - 1);
    out.margin = 0.0;
    return out;
  }

  // Supporting hyperplanes of conv(rows) through n-point subsets.  Orient so
  // the hull lies on the <= side; the hyperplane's signed offset is its
  // distance from the origin (negative when the origin is cut off).  The
  // margin is attained against the hyperplane of smallest offset.
  bool found = false;
  double best = std::numeric_limits<double>::infinity();
  Vec best_normal;
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    Mat A(n - 1, n);
    for (int i = 1; i < n; ++i) A.row(i - 1) = pts.row(idx[i]) - pts.row(idx[0]);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    if (svd.singularValues()(n - 2) <= 1e-9) return;  // affinely dependent
    Vec normal = svd.matrixV().col(n - 1);
    double c = normal.dot(pts.row(idx[0]).transpose());
    int above = 0, below = 0;
    for (int i = 0; i < m; ++i) {
      double r = normal.dot(pts.row(i).transpose()) - c;
      if (r > 1e-12) ++above;
      else if (r < -1e-12) ++below;
      if (above && below) return;  // not supporting
    }
    if (above) { normal = -normal; c = -c; }
    if (c < best) {
      best = c;
      best_normal = normal;
      found = true;
    }
  });
  require(found, Errc::degenerate_input, "hemisphere_check: no supporting hyperplane");
  out.margin = -best;
  out.axis = -best_normal;
  return out;
}

inline double binomial(int m, int k) {
  if (k < 0 || k > m) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (m - i) / (i + 1);
  return r;
}

}  // namespace polynorm
