#pragma once

#include <boost/rational.hpp>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsplit/core.hpp"

namespace nsplit::measures {

using Rational = boost::rational<long long>;

// Basis symbol of the measure vector space: the rational unit "1", the
// per-cell complement measure "A", or one of the independent reals
// "m[cell][color]". The declaration order fixes the formal symbol order
// (unit first), used for formal-positivity checks.
struct Symbol {
  enum class Kind : std::uint8_t { unit = 0, background = 1, independent = 2 };
  Kind kind = Kind::unit;
  std::int32_t cell = -1;   // independent only
  std::int32_t color = -1;  // independent only

  friend auto operator<=>(const Symbol&, const Symbol&) = default;

  std::string name() const;
  static Symbol one() { return {}; }
  static Symbol area() { return {Kind::background, -1, -1}; }
  static Symbol m(int cell, int color) {
    return {Kind::independent, static_cast<std::int32_t>(cell), static_cast<std::int32_t>(color)};
  }
};

// Exact element of the Q-span of the basis symbols. Zero coefficients are
// never stored, so equality is map equality.
class SymbolicQuantity {
 public:
  SymbolicQuantity() = default;

  static SymbolicQuantity of(const Symbol& s, const Rational& r);
  static SymbolicQuantity unit(const Rational& r) { return of(Symbol::one(), r); }

  const std::map<Symbol, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(const Symbol& s) const;
  bool is_zero() const { return coeffs_.empty(); }
  // Any m[...] symbol with a nonzero coefficient?
  bool has_independent_term() const;
  // Sign of the first nonzero coefficient in symbol order; 0 for zero.
  int formal_sign() const;

  SymbolicQuantity& operator+=(const SymbolicQuantity& o);
  SymbolicQuantity& operator-=(const SymbolicQuantity& o);
  friend SymbolicQuantity operator+(SymbolicQuantity a, const SymbolicQuantity& b) {
    a += b;
    return a;
  }
  friend SymbolicQuantity operator-(SymbolicQuantity a, const SymbolicQuantity& b) {
    a -= b;
    return a;
  }
  SymbolicQuantity scaled(const Rational& r) const;

  friend bool operator==(const SymbolicQuantity&, const SymbolicQuantity&) = default;

  // Deterministic rendering, e.g. "1/3 - 1/3*A - m[0][1]".
  std::string str() const;

 private:
  std::map<Symbol, Rational> coeffs_;
};

SymbolicQuantity sq_add(const SymbolicQuantity& a, const SymbolicQuantity& b);
SymbolicQuantity sq_sub(const SymbolicQuantity& a, const SymbolicQuantity& b);
SymbolicQuantity sq_scale(const SymbolicQuantity& q, const Rational& r);
bool sq_is_zero(const SymbolicQuantity& q);

// One homogeneously colored region with a symbolic measure.
struct Region {
  ColorId color = 0;
  SymbolicQuantity measure;
};

// Finite grid of cells, each carrying an ordered list of regions. For d=1
// the regions of a cell, concatenated cell by cell, are the atomic segments
// of the whole axis; cuts may pass only between atoms. For d=2 cells are
// atomic and cuts may pass only along cell grid lines.
struct SymbolicColoring {
  int d = 1, t = 0, N = 0, k = 0;
  // Nominal half-extent of the recolored patch inside a unit cell; purely
  // descriptive (the arithmetic is symbolic).
  Rational delta{1, 8};
  int palette = 0;
  std::vector<std::vector<Region>> cells;  // row-major, N^d entries
  // d=1 only: allowed cut positions as global atom-boundary indices
  // (boundary i sits before atom i; valid range 1..#atoms-1).
  std::vector<std::size_t> candidate_boundaries;
  // Colors whose per-piece fragments are the derived alpha quantities.
  std::vector<ColorId> background_colors;

  int white_color() const { return k; }
  int background_color(int cell) const { return k + 1 + cell; }
  // Total symbolic measure per color.
  std::vector<SymbolicQuantity> totals() const;
};

// The bad-coloring construction on an N^d grid: per cell one background
// color (complement measure A, split as two flanks for d=1), a white filler
// and one V-region of formal measure 2^d·m[cell][eta] per color eta < k.
// Supported: d in {1, 2}, N >= 2, k >= 2.
SymbolicColoring build_construction(int d, int t, int N, int k);

struct CheckOptions {
  std::uint64_t max_splittings = 10'000'000;
};

// First symbol exhibiting the failure of one fairness equation.
struct FailureWitness {
  int color = -1;
  std::string symbol;
  Rational coefficient{0};
  bool m_witnessed = false;
};

struct Certificate {
  std::size_t candidate_count = 0;
  std::uint64_t splittings_checked = 0;
  std::uint64_t assignments_checked = 0;
  bool conservation_ok = true;
  // Every enumerated assignment failed on a color whose family difference
  // carries a nonzero m-coefficient.
  bool all_failures_m_witnessed = true;
  std::vector<std::uint64_t> witness_counts;  // per color
  std::vector<FailureWitness> exemplars;      // first witness per color that ever served
  // Q-dimension of the background-fragment span beyond Q·A.
  int alpha_span_count = 0;
};

struct CheckResult {
  bool certified = false;
  std::optional<Certificate> certificate;
  // Cuts in construction coordinates: d=1 atom-boundary indices, d=2 grid
  // line positions; assignment over boxes in lexicographic box order.
  std::optional<SplitSolution> counterexample;
};

// Enumerates every splitting with at most t cuts per direction drawn from
// the coloring's candidate set, and every two-family assignment of the
// resulting pieces. Certifies that no assignment is fair (every fairness
// equation fails on some symbol), or returns the first fair splitting found
// in canonical order.
CheckResult check_no_fair_on_grid(const SymbolicColoring& col, int t, const CheckOptions& opts = {});

}  // namespace nsplit::measures
