#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/character.hpp"
#include "charvar/modular_group.hpp"

namespace charvar {

/// How successive group elements are chosen along an orbit.
struct OrbitPolicy {
  enum class Kind { FixedWordCycle, UniformRandomGenerator, RandomReducedWord };

  Kind kind = Kind::UniformRandomGenerator;
  /// FixedWordCycle: the word to cycle through, one letter per step, last letter first.
  std::vector<GeneratorId> word;
  /// Random policies draw from this alphabet (all fifteen generators by default).
  std::vector<GeneratorId> alphabet{kAllGenerators.begin(), kAllGenerators.end()};
  /// RandomReducedWord: letters per step; no letter is immediately repeated.
  std::size_t length = 1;
  std::uint64_t seed = 0;

  static OrbitPolicy fixed_cycle(std::vector<GeneratorId> word);
  static OrbitPolicy uniform(std::uint64_t seed);
  static OrbitPolicy random_reduced_word(std::size_t length, std::uint64_t seed);

  /// "uniform", "cycle:TauX TauY", "reduced:<length>"; seed supplied separately.
  static OrbitPolicy parse(std::string_view text, std::uint64_t seed);
  std::string str() const;
};

struct OrbitPoint {
  long step = 0;
  Character point;
  /// Letters applied to reach this point from the previous one.
  std::string word;
};

struct Orbit {
  std::vector<OrbitPoint> points;
  /// Set when a float orbit left the finite doubles and was cut short.
  std::string diagnostic;
};

/// n successive images of c. Exact orbits preserve kappa exactly. A float
/// orbit stops early (with a diagnostic) once a coordinate is no longer finite.
Orbit orbit(const Character& c, const OrbitPolicy& policy, long n);

/// Streaming form of orbit(): calls visit(step, point, word) for steps 1..n
/// until it returns false. Returns the number of steps taken; `diagnostic`
/// receives the reason when a float orbit is cut short.
using OrbitVisitor = std::function<bool(long step, const Character& point, std::string_view word)>;
long orbit_visit(const Character& c, const OrbitPolicy& policy, long n, const OrbitVisitor& visit,
                 std::string* diagnostic = nullptr);

/// `workers` independent chains with seeds seed, seed+1, ..., each of length n,
/// run concurrently and returned in chain order.
std::vector<Orbit> orbit_chains(const Character& c, const OrbitPolicy& policy, long n, unsigned workers);

/// The level curve kappa(x0, y, z) = t as the ellipse
///   (2 - x0)/4 (y + z)^2 + (2 + x0)/4 (y - z)^2 = t + 2 - x0^2.
struct Ellipse {
  double x0 = 0;
  double t = 0;
  double coef_sum = 0;   // (2 - x0)/4, multiplies (y + z)^2
  double coef_diff = 0;  // (2 + x0)/4, multiplies (y - z)^2
  double rhs = 0;        // t + 2 - x0^2
  /// Semi-axes along the (y + z) and (y - z) directions.
  double semi_sum = 0;
  double semi_diff = 0;
  /// A coefficient is within 1e-9 of 0 (x0 at +-2).
  bool degenerate = false;

  /// Point at angle phi: y = Y sin(phi), 2z - x0 y = sqrt(4 - x0^2) Y cos(phi).
  std::array<double, 2> point(double phi) const;
  /// Inverse of point(), in (-pi, pi].
  double angle(double y, double z) const;
};

/// Throws std::invalid_argument unless -2 < x0 < 2 and t + 2 - x0^2 > 0.
Ellipse ellipse_E(double x0, double t);

/// arccos(x0 / 2): TauX acts on ellipse_E(x0, t) as phi -> phi - angle.
/// Throws std::invalid_argument unless -2 < x0 < 2.
double dehn_rotation_angle(double x0);

struct Window {
  std::array<double, 3> lo{-2, -2, -2};
  std::array<double, 3> hi{2, 2, 2};

  bool contains(const Character& c) const;
  /// "xlo,xhi,ylo,yhi,zlo,zhi" or a single half-width "w".
  static Window parse(std::string_view text);
  std::string str() const;
};

struct LevelSample {
  Character point;
  double weight = 0;
};

struct SampleSet {
  std::vector<LevelSample> samples;
  /// Proposals drawn in total, accepted or not.
  std::size_t proposals = 0;
  std::string diagnostic;

  double total_weight() const;
};

/// Weighted samples of the invariant area form on kappa = t inside `window`,
/// normalized so that the compact reducible component at t = 2 has area 1.
/// The weights sum to a Monte Carlo estimate of the area inside the window.
///
/// x is drawn with density proportional to 1/sqrt|4 - x^2|, y exactly from
/// the fiber density 1/|2z - xy|, the sheet uniformly; points whose z falls
/// outside the window are rejected. Worker k uses seed + k.
SampleSet sample_level_set(double t, std::size_t n, const Window& window, std::uint64_t seed, unsigned workers = 1);

/// Independent estimate of the invariant area inside the window: (x, y)
/// uniform in the window, both sheets, integrand (1/2 pi^2) / |2z - xy|.
double estimate_area_uniform(double t, const Window& window, std::size_t n, std::uint64_t seed);

/// Angle pair as a point of R^2 / Z^2.
using TorusPoint = std::array<double, 2>;

/// (a, b) -> m (a, b)^T mod 1, in [0, 1)^2. Throws std::invalid_argument unless |det m| = 1.
TorusPoint gl2z_torus_action(const Gl2zClass::Matrix& m, const TorusPoint& p);

struct HistogramSpec {
  Window window;
  int bins = 8;  // per axis
  /// Coordinates binned (subset of {0,1,2}).
  std::vector<int> axes{0, 1, 2};
};

/// Weighted histogram with an overflow cell for points outside the window.
/// merge() is associative and commutative.
class Histogram {
 public:
  explicit Histogram(HistogramSpec spec);

  void add(const Character& c, double weight);
  void add(const std::array<double, 3>& p, double weight);
  void merge(const Histogram& other);

  std::size_t cells() const { return w_.size(); }
  double weight(std::size_t i) const { return w_[i]; }
  double weight_sq(std::size_t i) const { return w2_[i]; }
  double total() const;
  const HistogramSpec& spec() const { return spec_; }

 private:
  std::size_t cell_of(const std::array<double, 3>& p) const;
  HistogramSpec spec_;
  std::vector<double> w_;   // last cell is overflow
  std::vector<double> w2_;
};

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  double critical_1pct = 0;

  bool consistent() const { return statistic < critical_1pct; }
};

/// Two-sample chi-square between normalized weighted histograms:
///   sum_i (p_i - q_i)^2 / (s_i + r_i),  s_i = sum w^2 / W^2 in cell i,
/// over cells where either side has weight; dof = cells used - 1.
/// Throws std::invalid_argument if bins < 2 or either sample is empty.
ChiSquare equidistribution_stat(const std::vector<LevelSample>& a, const std::vector<LevelSample>& b,
                                const HistogramSpec& spec);
ChiSquare equidistribution_stat(const Histogram& a, const Histogram& b);

/// Upper 1% point of chi-square with dof degrees of freedom.
double chi_square_critical_1pct(int dof);

struct KolmogorovSmirnov {
  double d = 0;
  double n_eff = 0;
  double p_value = 1;
  double critical_1pct = 0;  // 1.6276 / sqrt(n_eff)

  bool consistent() const { return d < critical_1pct; }
};

/// Weighted one-sample KS against the uniform law on [0, 1).
KolmogorovSmirnov ks_uniform(const std::vector<double>& values, const std::vector<double>& weights);

/// Points of an orbit as unit-weight samples; `thin` keeps every thin-th point.
std::vector<LevelSample> as_samples(const Orbit& o, std::size_t thin = 1);

/// Seed taken from CHARVAR_SEED when set and parseable, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

/// {"step":n,"x":..,"y":..,"z":..,"kappa":..,"word":".."} per line.
std::string orbit_jsonl(const Orbit& o);
/// Header "step,x,y,z,kappa,word" then one row per point.
std::string orbit_csv(const Orbit& o);
std::string samples_jsonl(const SampleSet& s);
std::string samples_csv(const SampleSet& s);

}  // namespace charvar
