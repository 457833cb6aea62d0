#pragma once

// The canonical skew tent map
//
//   f(x) = 1 + r x   (x <= 0)
//          1 - k x   (x >= 0),     k, r > 0,
//
// the reduction of a general two-line tent map to this form, its trapping
// interval, and the conjugate unit map g on [0, 1].

#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "skewtent/error.hpp"

namespace skewtent {

inline constexpr double kEscapeThreshold = 1e12;
inline constexpr std::size_t kDefaultHorizon = 10000;

/// Slope pair (k, r) of the canonical map. Both strictly positive and finite.
class MapParams {
 public:
  MapParams(double k, double r);

  double k() const noexcept { return k_; }
  double r() const noexcept { return r_; }

  friend bool operator==(const MapParams&, const MapParams&) = default;

 private:
  double k_;
  double r_;
};

enum class Branch { Left, Right };

char branch_letter(Branch b);

/// f(x) = s + r x (x <= x0), t - k x (x >= x0) with s + r x0 = t - k x0 = y0.
/// `r` is the left slope and `-k` the right slope; either may have any sign.
struct GeneralTent {
  double r;
  double k;
  double x0;
  double y0;

  static GeneralTent from_kink(double r, double k, double x0, double y0);
  /// From the two lines y = s + r x and y = t - k x. Throws InvalidMap when parallel.
  static GeneralTent from_lines(double s, double r, double t, double k);

  double s() const { return y0 - r * x0; }
  double t() const { return y0 + k * x0; }
  double operator()(double x) const { return x <= x0 ? s() + r * x : t() - k * x; }
};

enum class TrivialReason {
  Homeomorphism,  ///< slopes of equal sign, f is monotone
  MonotoneTrap,   ///< gamma = y0 - x0 <= 0, every orbit ends on the increasing branch
};

struct Trivial {
  TrivialReason reason;
};

struct Canonical {
  MapParams params;
  double gamma;  ///< y0 - x0 after the optional flip, > 0
  bool flipped;  ///< the conjugacy x -> -x was applied first
};

using NormalizeResult = std::variant<Trivial, Canonical>;

NormalizeResult normalize(const GeneralTent& gt);

double eval_f(const MapParams& p, double x) noexcept;
Branch branch_of(double x) noexcept;

struct Orbit {
  double x0 = 0.0;
  std::vector<double> points;     ///< points[0] == x0
  std::vector<Branch> branches;   ///< branches[i] was applied to points[i]
  bool escaped = false;           ///< stopped early, |x| exceeded the threshold
};

Orbit iterate_f(const MapParams& p, double x0, std::size_t n,
                double escape_threshold = kEscapeThreshold);

/// I = [alpha, beta] when r > 1, otherwise the whole line.
struct TrappingInterval {
  double alpha = -std::numeric_limits<double>::infinity();
  double beta = std::numeric_limits<double>::infinity();

  bool bounded() const noexcept { return alpha > -std::numeric_limits<double>::infinity(); }
  bool contains(double x) const noexcept { return alpha <= x && x <= beta; }
};

TrappingInterval trapping_interval(const MapParams& p) noexcept;

struct Landed {
  std::size_t n;
};
struct Escaped {
  std::size_t n;  ///< step at which the escape certificate was observed
};
struct Undecided {};

using LandingResult = std::variant<Landed, Escaped, Undecided>;

/// First n <= horizon with f^n(x) in [1-k, 1]. Leaving [alpha, beta] (r > 1) or
/// dropping below -escape_threshold counts as escape and is checked first.
LandingResult landing_time(const MapParams& p, double x, std::size_t horizon = kDefaultHorizon,
                           double escape_threshold = kEscapeThreshold);

/// g = h^{-1} f h on [0, 1] with h(x) = 1 - k + k x:
///   g(x) = b + r x (0 <= x <= a),  k (1 - x) (a <= x <= 1),
/// a = 1 - 1/k, b = 1 - r a.
class UnitMap {
 public:
  const MapParams& params() const noexcept { return params_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double k() const noexcept { return params_.k(); }
  double r() const noexcept { return params_.r(); }

  /// Throws OutOfDomain outside [0, 1].
  double operator()(double x) const;
  /// Same formula without the domain check; used on already-validated iterates.
  double eval_unchecked(double x) const noexcept { return x <= a_ ? b_ + r() * x : k() * (1.0 - x); }
  Branch branch(double x) const noexcept { return x <= a_ ? Branch::Left : Branch::Right; }

  double h(double x) const noexcept { return 1.0 - k() + k() * x; }
  double h_inv(double y) const noexcept { return (y - 1.0 + k()) / k(); }

 private:
  friend UnitMap to_unit(const MapParams& p);
  UnitMap(const MapParams& p, double a, double b) : params_(p), a_(a), b_(b) {}

  MapParams params_;
  double a_;
  double b_;
};

/// Requires k > 1 and r <= k/(k-1); throws NotReducible otherwise.
UnitMap to_unit(const MapParams& p);

double eval_g(const UnitMap& u, double x);
Orbit iterate_g(const UnitMap& u, double x0, std::size_t n);

}  // namespace skewtent
