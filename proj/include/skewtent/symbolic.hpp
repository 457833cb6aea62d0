#pragma once

// Invariant Cantor repellers and their symbolic dynamics: the full 2-shift of
// the escape region and the subshift Sigma_m of a period window.

#include <cstddef>
#include <variant>
#include <vector>

#include "skewtent/core_map.hpp"
#include "skewtent/interval.hpp"

namespace skewtent {

/// x -> offset + slope * x
struct Affine {
  double offset = 0.0;
  double slope = 1.0;

  double operator()(double x) const noexcept { return offset + slope * x; }
  Interval image(const Interval& iv) const noexcept {
    const double u = (*this)(iv.lo);
    const double v = (*this)(iv.hi);
    return u <= v ? Interval{u, v} : Interval{v, u};
  }
};

enum class ShiftKind { FullShift2, WindowShift };

enum class Frame {
  Conjugated,  ///< [0, 1] rescaled from the trapping interval [alpha, beta]
  Unit,        ///< the unit map g on [0, 1]
};

using Word = std::vector<int>;

/// Cantor set of points whose orbits stay in the partition forever.
/// All coordinates are in `frame`; `to_f` maps them to f-coordinates.
struct CantorSystem {
  ShiftKind kind;
  int m = 0;  ///< window index for WindowShift, 0 otherwise
  Frame frame;
  MapParams params;
  PiecewiseLinear map;                 ///< the dynamics in frame coordinates
  Affine to_f;                         ///< frame -> f-coordinates
  std::vector<int> symbols;            ///< alphabet, in partition order
  std::vector<Interval> partition;     ///< partition[i] carries symbols[i]
  std::vector<Affine> branch_inverses;  ///< inverse of map on partition[i]
  /// Lower bound on |(g^n)'| per returning block: min(r, k) for the 2-shift,
  /// k^2 r^{2m-2} for Sigma_m.
  double expansion;

  std::size_t index_of(int symbol) const;  ///< throws InvalidWord
  Interval span() const noexcept { return {partition.front().lo, partition.back().hi}; }
};

/// Membership slack used when locating an iterate in the partition.
inline constexpr double kPartitionSlack = 1e-12;

/// Requires k > 1 and r > k/(k-1); throws WrongRegion otherwise.
CantorSystem escape_cantor_system(const MapParams& p);

/// Requires K_m(r) < k < K_{m+1}(r) and r^m k^2 - k - r < 0; throws WrongRegion
/// otherwise and PrecisionLoss if a covering relation or expansion bound fails.
CantorSystem window_cantor_system(const MapParams& p);

struct Exited {
  std::size_t step;  ///< index of the first iterate outside the partition
};

using ItineraryResult = std::variant<Word, Exited>;

/// Symbols of x, g(x), ..., g^{n-1}(x), with x in frame coordinates.
ItineraryResult itinerary(const CantorSystem& sys, double x, std::size_t n);

/// Throws InvalidWord on a symbol outside the alphabet.
bool is_admissible(const Word& w, const CantorSystem& sys);

/// Closed cylinder of points whose first |w| symbols are w, built by applying
/// branch inverses from the last symbol backwards. Throws Inadmissible, and
/// InvalidWord for an empty word.
Interval point_from_itinerary(const CantorSystem& sys, const Word& w);

/// Every admissible word of the given length, in lexicographic order.
std::vector<Word> admissible_words(const CantorSystem& sys, std::size_t length);

}  // namespace skewtent
