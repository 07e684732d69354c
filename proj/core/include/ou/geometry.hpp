#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>

namespace ou {

// Supported ambient dimensions are 1..kMaxDim.
inline constexpr std::size_t kMaxDim = 3;

/// Point of R^n with 1 <= n <= kMaxDim and finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::span<const double> coords);
  Point(std::initializer_list<double> coords);

  static Point origin(std::size_t dim);
  // r * e_1 in the given dimension.
  static Point on_axis(std::size_t dim, double r);

  std::size_t dim() const noexcept { return dim_; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }

  double norm_squared() const noexcept;
  double norm() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Point& a, const Point& b) noexcept;

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

double dot(const Point& a, const Point& b) noexcept;
// |a - b|^2, evaluated so that distance_squared(a,b) == distance_squared(b,a) bitwise.
double distance_squared(const Point& a, const Point& b) noexcept;
// a + s * b
Point axpy(const Point& a, double s, const Point& b);
// s * a + b
Point scale_add(double s, const Point& a, const Point& b);

/// Open ball B(center, radius).
class Ball {
 public:
  Ball(Point center, double radius);

  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  std::size_t dim() const noexcept { return center_.dim(); }

  // lambda * B = B(center, lambda * radius)
  Ball dilate(double lambda) const;
  bool contains(const Point& x) const noexcept;

  friend bool operator==(const Ball&, const Ball&) = default;

 private:
  Point center_;
  double radius_;
};

/// C_0(B) = 2B and C_k(B) = 2^{k+1}B \ 2^k B for k >= 1.
class Annulus {
 public:
  Annulus(Ball base, int k);

  const Ball& base() const noexcept { return base_; }
  int k() const noexcept { return k_; }
  std::size_t dim() const noexcept { return base_.dim(); }

  double inner_radius() const noexcept;
  double outer_radius() const noexcept;
  bool contains(const Point& x) const noexcept;

  friend bool operator==(const Annulus&, const Annulus&) = default;

 private:
  Ball base_;
  int k_;
};

/// All of R^n.
struct FullSpace {
  std::size_t dim = 1;
  friend bool operator==(const FullSpace&, const FullSpace&) = default;
};

using Region = std::variant<Ball, Annulus, FullSpace>;

std::size_t region_dim(const Region& region) noexcept;
bool region_contains(const Region& region, const Point& x) noexcept;

/// Admissible balls satisfy r <= min(1, |c|^{-1}); the Gaussian measure is
/// doubling on this family.
double admissible_radius(const Point& center) noexcept;
bool is_admissible(const Ball& ball, double rel_tol = 1e-12) noexcept;
bool is_maximal_admissible(const Ball& ball, double rel_tol = 1e-12) noexcept;
Ball make_maximal_admissible_ball(const Point& center);

/// dist(B, C_k(B)) = inf{|x - y| : x in B, y in C_k(B)}: 0 for k = 0 and
/// (2^k - 1) r_B otherwise. Throws DomainError if annulus.base() != ball.
double set_distance(const Ball& ball, const Annulus& annulus);

/// (2^{k+1} - 1) r_B, a coarser distance scale for the pair (B, C_k(B)).
/// Like set_distance it is O(1) on maximal admissible balls with
/// 2^k <= |c_B|; exposed for comparison only.
double counterexample_distance_factor(const Ball& ball, int k);

}  // namespace ou
