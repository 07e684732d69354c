#include "ou/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ou/errors.hpp"

namespace ou {

Point::Point(std::span<const double> coords) {
  if (coords.empty() || coords.size() > kMaxDim) {
    throw DomainError("Point: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }
  for (double v : coords) {
    if (!std::isfinite(v)) throw DomainError("Point: coordinates must be finite");
  }
  std::copy(coords.begin(), coords.end(), c_.begin());
  dim_ = coords.size();
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point Point::origin(std::size_t dim) { return on_axis(dim, 0.0); }

Point Point::on_axis(std::size_t dim, double r) {
  std::array<double, kMaxDim> c{};
  c[0] = r;
  return Point(std::span<const double>(c.data(), dim));
}

double Point::norm_squared() const noexcept { return dot(*this, *this); }

double Point::norm() const noexcept { return std::sqrt(norm_squared()); }

std::string Point::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < dim_; ++i) os << (i ? "," : "") << c_[i];
  os << ')';
  return os.str();
}

bool operator==(const Point& a, const Point& b) noexcept {
  if (a.dim_ != b.dim_) return false;
  return std::equal(a.c_.begin(), a.c_.begin() + a.dim_, b.c_.begin());
}

double dot(const Point& a, const Point& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double distance_squared(const Point& a, const Point& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

Point axpy(const Point& a, double s, const Point& b) {
  std::array<double, kMaxDim> c{};
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + s * b[i];
  return Point(std::span<const double>(c.data(), a.dim()));
}

Point scale_add(double s, const Point& a, const Point& b) {
  std::array<double, kMaxDim> c{};
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = s * a[i] + b[i];
  return Point(std::span<const double>(c.data(), a.dim()));
}

Ball::Ball(Point center, double radius) : center_(std::move(center)), radius_(radius) {
  if (center_.dim() == 0) throw DomainError("Ball: center has no dimension");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("Ball: radius must be positive and finite");
  }
}

Ball Ball::dilate(double lambda) const { return Ball(center_, lambda * radius_); }

bool Ball::contains(const Point& x) const noexcept {
  return distance_squared(x, center_) < radius_ * radius_;
}

Annulus::Annulus(Ball base, int k) : base_(std::move(base)), k_(k) {
  if (k < 0) throw DomainError("Annulus: k must be non-negative");
  if (k > 60) throw DomainError("Annulus: k too large");
}

double Annulus::inner_radius() const noexcept {
  return k_ == 0 ? 0.0 : std::ldexp(base_.radius(), k_);
}

double Annulus::outer_radius() const noexcept { return std::ldexp(base_.radius(), k_ + 1); }

bool Annulus::contains(const Point& x) const noexcept {
  const double d2 = distance_squared(x, base_.center());
  const double lo = inner_radius();
  const double hi = outer_radius();
  return d2 < hi * hi && (k_ == 0 || d2 >= lo * lo);
}

std::size_t region_dim(const Region& region) noexcept {
  return std::visit(
      [](const auto& r) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, FullSpace>) {
          return r.dim;
        } else {
          return r.dim();
        }
      },
      region);
}

bool region_contains(const Region& region, const Point& x) noexcept {
  return std::visit(
      [&](const auto& r) -> bool {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, FullSpace>) {
          return x.dim() == r.dim;
        } else {
          return r.contains(x);
        }
      },
      region);
}

double admissible_radius(const Point& center) noexcept {
  const double n = center.norm();
  return n <= 1.0 ? 1.0 : 1.0 / n;
}

bool is_admissible(const Ball& ball, double rel_tol) noexcept {
  return ball.radius() <= admissible_radius(ball.center()) * (1.0 + rel_tol);
}

bool is_maximal_admissible(const Ball& ball, double rel_tol) noexcept {
  const double r = admissible_radius(ball.center());
  return std::abs(ball.radius() - r) <= rel_tol * r;
}

Ball make_maximal_admissible_ball(const Point& center) {
  return Ball(center, admissible_radius(center));
}

double set_distance(const Ball& ball, const Annulus& annulus) {
  if (!(annulus.base() == ball)) {
    throw DomainError("set_distance: annulus is not built on the given ball");
  }
  if (annulus.k() == 0) return 0.0;
  return (std::ldexp(1.0, annulus.k()) - 1.0) * ball.radius();
}

double counterexample_distance_factor(const Ball& ball, int k) {
  if (k < 0) throw DomainError("counterexample_distance_factor: k must be non-negative");
  return (std::ldexp(1.0, k + 1) - 1.0) * ball.radius();
}

}  // namespace ou
