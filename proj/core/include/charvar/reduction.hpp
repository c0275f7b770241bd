#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "charvar/character.hpp"
#include "charvar/modular_group.hpp"

namespace charvar {

/// Roots zeta-(x,y) <= zeta+(x,y) of z^2 - xyz + x^2 + y^2 - 4 = 0, i.e.
/// (xy -+ sqrt((x^2-4)(y^2-4))) / 2.
///
/// `center` and `half_width_sq` are in the mode of the input. `lo`/`hi` are
/// exact only when the square root is rational (`roots_exact`); otherwise
/// they are float approximations. Use strictly_contains() for exact tests.
struct ZetaInterval {
  Scalar center;
  Scalar half_width_sq;
  Scalar lo;
  Scalar hi;
  bool roots_exact = false;

  /// lo < v < hi, decided without square roots.
  bool strictly_contains(const Scalar& v) const;
};

/// Throws std::invalid_argument unless x > 2 and y > 2.
ZetaInterval zeta_pm(const Scalar& x, const Scalar& y);

/// z -> xy - z.
Character qz_step(const Character& c);

/// Linear move (sign change, then permutation) bringing c to 2 < x <= y <= z.
/// Equal coordinates keep their relative order. Throws std::invalid_argument
/// when no such move exists: some |coordinate| <= 2 or an odd number of
/// negative coordinates.
std::pair<Character, GammaElement> sort_normalize(const Character& c);

enum class Verdict { FrickePants, NonHyperbolicCoordinate };

struct ReductionResult {
  Character input;
  Character normal_form;
  GammaElement applied;
  long steps = 0;
  Verdict verdict = Verdict::FrickePants;
  int axis = -1;  // coordinate in [-2, 2] for NonHyperbolicCoordinate

  std::string verdict_name() const;
  /// {"input":..,"normal_form":..,"word":"..","steps":n,"verdict":".."}
  std::string to_json() const;
};

/// Thrown when the iteration cap is hit (only reachable in float mode near
/// kappa = 2).
class ReductionCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long kReductionIterationCap = 1'000'000;

/// Sort, reflect, repeat until a coordinate lies in [-2, 2] or all are <= -2.
/// Throws std::invalid_argument if kappa(c) <= 2.
ReductionResult reduce(const Character& c, long max_iterations = kReductionIterationCap);

/// steps <= ceil((x + y + z - 6) / (2 sqrt(kappa - 2))) for a start in (2, inf)^3.
/// Decided exactly in exact mode.
bool within_step_bound(const Character& start, long steps);

/// kappa > 18 and the reduced form lies in the open octant (-inf, -2)^3.
/// Throws std::invalid_argument if kappa(c) <= 2.
bool in_omega(const Character& c);

/// True if every coordinate is < -2 (with the float tolerance against -2).
bool in_omega_zero(const Character& c);

/// Float points of (-inf,-2)^3 on kappa = t, t > 18. (x, y) is uniform on the
/// admissible triangle x, y < -2, x + y > -sqrt(t - 2); z is the smaller root.
/// Throws std::invalid_argument if t <= 18.
std::vector<Character> sample_omega_zero(double t, std::size_t n, std::uint64_t seed);

}  // namespace charvar
