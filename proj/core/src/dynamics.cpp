#include "charvar/dynamics.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace charvar {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<GeneratorId> parse_word(std::string_view text) {
  std::vector<GeneratorId> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(parse_generator(tok));
  return out;
}

// Chooses the letters of each step.
class StepSource {
 public:
  explicit StepSource(const OrbitPolicy& p) : p_(p), rng_(p.seed) {
    if (p_.kind == OrbitPolicy::Kind::FixedWordCycle && p_.word.empty())
      throw std::invalid_argument("orbit: fixed word cycle needs a nonempty word");
    if (p_.kind != OrbitPolicy::Kind::FixedWordCycle && p_.alphabet.empty())
      throw std::invalid_argument("orbit: empty generator alphabet");
  }

  // Letters in application order.
  const std::vector<GeneratorId>& next() {
    letters_.clear();
    switch (p_.kind) {
      case OrbitPolicy::Kind::FixedWordCycle: {
        const std::size_t len = p_.word.size();
        letters_.push_back(p_.word[len - 1 - (pos_++ % len)]);
        break;
      }
      case OrbitPolicy::Kind::UniformRandomGenerator:
        letters_.push_back(draw());
        break;
      case OrbitPolicy::Kind::RandomReducedWord:
        for (std::size_t k = 0; k < std::max<std::size_t>(1, p_.length); ++k) {
          GeneratorId g = draw();
          while (p_.alphabet.size() > 1 && have_prev_ && g == prev_) g = draw();
          letters_.push_back(g);
          prev_ = g;
          have_prev_ = true;
        }
        break;
    }
    return letters_;
  }

  // Composition order: last applied letter first.
  std::string word() const {
    std::string s;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      if (!s.empty()) s += ' ';
      s += mnemonic(*it);
    }
    return s;
  }

 private:
  GeneratorId draw() {
    std::uniform_int_distribution<std::size_t> pick(0, p_.alphabet.size() - 1);
    return p_.alphabet[pick(rng_)];
  }

  const OrbitPolicy& p_;
  std::mt19937_64 rng_;
  std::vector<GeneratorId> letters_;
  std::size_t pos_ = 0;
  GeneratorId prev_ = GeneratorId::Epsilon;
  bool have_prev_ = false;
};

// Fiber of the projection to x: y-density 1/sqrt(A y^2 + C), A = x^2 - 4,
// C = 4 (t + 2 - x^2). Each piece is an interval in a coordinate s in which
// the density is the constant 1/sqrt|A|.
struct FiberPiece {
  enum Kind { Arcsin, Arcsinh, ArccoshPos, ArccoshNeg } kind;
  double s_lo;
  double s_hi;
};

struct Fiber {
  double a = 0;
  double c = 0;
  double scale = 0;  // Y, 1/k or Y0 depending on the case
  std::vector<FiberPiece> pieces;
  double s_mass = 0;

  double mass() const { return s_mass / std::sqrt(std::abs(a)); }

  double y_of(const FiberPiece& p, double s) const {
    switch (p.kind) {
      case FiberPiece::Arcsin:
        return scale * std::sin(s);
      case FiberPiece::Arcsinh:
        return scale * std::sinh(s);
      case FiberPiece::ArccoshPos:
        return scale * std::cosh(s);
      case FiberPiece::ArccoshNeg:
        return -scale * std::cosh(s);
    }
    return 0;
  }
};

Fiber fiber(double x, double t, double ylo, double yhi) {
  Fiber f;
  f.a = x * x - 4.0;
  f.c = 4.0 * (t + 2.0 - x * x);
  auto push = [&](FiberPiece::Kind k, double lo, double hi) {
    if (hi > lo) {
      f.pieces.push_back({k, lo, hi});
      f.s_mass += hi - lo;
    }
  };
  if (f.a < 0 && f.c > 0) {
    f.scale = std::sqrt(f.c / -f.a);
    const double lo = std::max(ylo, -f.scale);
    const double hi = std::min(yhi, f.scale);
    if (hi > lo)
      push(FiberPiece::Arcsin, std::asin(std::clamp(lo / f.scale, -1.0, 1.0)),
           std::asin(std::clamp(hi / f.scale, -1.0, 1.0)));
  } else if (f.a > 0 && f.c > 0) {
    f.scale = std::sqrt(f.c / f.a);
    push(FiberPiece::Arcsinh, std::asinh(ylo / f.scale), std::asinh(yhi / f.scale));
  } else if (f.a > 0 && f.c < 0) {
    f.scale = std::sqrt(-f.c / f.a);
    if (yhi > f.scale)
      push(FiberPiece::ArccoshPos, std::acosh(std::max(1.0, ylo / f.scale)), std::acosh(yhi / f.scale));
    if (ylo < -f.scale)
      push(FiberPiece::ArccoshNeg, std::acosh(std::max(1.0, -yhi / f.scale)), std::acosh(-ylo / f.scale));
  }
  // A = 0 or C = 0: a null set of x values; left empty.
  return f;
}

// Proposal for x with density proportional to 1/sqrt|4 - x^2| on the part of
// [xlo, xhi] over which the fiber can be nonempty.
struct XPiece {
  enum Kind { Sin, CoshPos, CoshNeg } kind;
  double s_lo;
  double s_hi;
};

struct XProposal {
  std::vector<XPiece> pieces;
  double mass = 0;

  double x_of(const XPiece& p, double s) const {
    switch (p.kind) {
      case XPiece::Sin:
        return 2.0 * std::sin(s);
      case XPiece::CoshPos:
        return 2.0 * std::cosh(s);
      case XPiece::CoshNeg:
        return -2.0 * std::cosh(s);
    }
    return 0;
  }

  double density(double x) const { return 1.0 / (std::sqrt(std::abs(4.0 - x * x)) * mass); }
};

XProposal x_proposal(double t, double xlo, double xhi) {
  XProposal q;
  auto push = [&](XPiece::Kind k, double lo, double hi) {
    if (hi > lo) {
      q.pieces.push_back({k, lo, hi});
      q.mass += hi - lo;
    }
  };
  if (t + 2.0 > 0) {
    const double r = std::min(2.0, std::sqrt(t + 2.0));
    const double lo = std::max(xlo, -r);
    const double hi = std::min(xhi, r);
    if (hi > lo) push(XPiece::Sin, std::asin(std::clamp(lo / 2.0, -1.0, 1.0)), std::asin(std::clamp(hi / 2.0, -1.0, 1.0)));
  }
  if (xhi > 2.0) push(XPiece::CoshPos, std::acosh(std::max(1.0, xlo / 2.0)), std::acosh(xhi / 2.0));
  if (xlo < -2.0) push(XPiece::CoshNeg, std::acosh(std::max(1.0, -xhi / 2.0)), std::acosh(-xlo / 2.0));
  return q;
}

template <class Piece>
const Piece& pick_piece(const std::vector<Piece>& pieces, double total, double u) {
  double acc = 0;
  for (const auto& p : pieces) {
    acc += p.s_hi - p.s_lo;
    if (u * total < acc) return p;
  }
  return pieces.back();
}

struct RawSample {
  std::array<double, 3> p;
  double ratio;
};

struct WorkerOutput {
  std::vector<RawSample> samples;
  std::size_t proposals = 0;
  bool exhausted = false;
};

WorkerOutput sample_worker(double t, std::size_t quota, const Window& w, const XProposal& q, std::uint64_t seed) {
  WorkerOutput out;
  out.samples.reserve(quota);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t cap = 200 * quota + 1'000'000;
  while (out.samples.size() < quota) {
    if (out.proposals >= cap) {
      out.exhausted = true;
      break;
    }
    ++out.proposals;
    const XPiece& xp = pick_piece(q.pieces, q.mass, u(rng));
    const double x = q.x_of(xp, xp.s_lo + u(rng) * (xp.s_hi - xp.s_lo));
    if (x < w.lo[0] || x > w.hi[0]) continue;
    const Fiber f = fiber(x, t, w.lo[1], w.hi[1]);
    if (f.pieces.empty()) continue;
    const FiberPiece& fp = pick_piece(f.pieces, f.s_mass, u(rng));
    const double y = f.y_of(fp, fp.s_lo + u(rng) * (fp.s_hi - fp.s_lo));
    const double d = std::sqrt(std::max(0.0, f.a * y * y + f.c));
    const double sheet = u(rng) < 0.5 ? 1.0 : -1.0;
    const double z = (x * y + sheet * d) / 2.0;
    if (z < w.lo[2] || z > w.hi[2]) continue;
    // Importance ratio of the invariant form (1/2pi^2) dx dy / |2z - xy| on a
    // uniformly chosen sheet against the proposal.
    const double ratio = 2.0 / (2.0 * kPi * kPi) * f.mass() / q.density(x);
    out.samples.push_back({{x, y, z}, ratio});
  }
  return out;
}

std::string fmt(double v) { return double_to_string(v); }

nlohmann::ordered_json scalar_json(const Scalar& s) {
  if (s.is_exact()) return s.str();
  const double d = s.to_double();
  if (!std::isfinite(d)) return s.str();
  return d;
}

}  // namespace

// ------------------------------------------------------------------ orbits

OrbitPolicy OrbitPolicy::fixed_cycle(std::vector<GeneratorId> word) {
  OrbitPolicy p;
  p.kind = Kind::FixedWordCycle;
  p.word = std::move(word);
  return p;
}

OrbitPolicy OrbitPolicy::uniform(std::uint64_t seed) {
  OrbitPolicy p;
  p.kind = Kind::UniformRandomGenerator;
  p.seed = seed;
  return p;
}

OrbitPolicy OrbitPolicy::random_reduced_word(std::size_t length, std::uint64_t seed) {
  OrbitPolicy p;
  p.kind = Kind::RandomReducedWord;
  p.length = length;
  p.seed = seed;
  return p;
}

OrbitPolicy OrbitPolicy::parse(std::string_view text, std::uint64_t seed) {
  if (text == "uniform") return uniform(seed);
  if (text.starts_with("cycle:")) {
    OrbitPolicy p = fixed_cycle(parse_word(text.substr(6)));
    p.seed = seed;
    return p;
  }
  if (text.starts_with("reduced:")) {
    const std::string_view num = text.substr(8);
    std::size_t len = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), len);
    if (ec != std::errc() || ptr != num.data() + num.size() || len == 0)
      throw ParseError("bad reduced-word length: " + std::string(num));
    return random_reduced_word(len, seed);
  }
  throw ParseError("unknown orbit policy '" + std::string(text) + "' (uniform | cycle:<word> | reduced:<length>)");
}

std::string OrbitPolicy::str() const {
  switch (kind) {
    case Kind::FixedWordCycle: {
      std::string s = "cycle:";
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += ' ';
        s += mnemonic(word[i]);
      }
      return s;
    }
    case Kind::UniformRandomGenerator:
      return "uniform";
    case Kind::RandomReducedWord:
      return "reduced:" + std::to_string(length);
  }
  return "?";
}

long orbit_visit(const Character& c, const OrbitPolicy& policy, long n, const OrbitVisitor& visit,
                 std::string* diagnostic) {
  if (n < 0) throw std::invalid_argument("orbit length must be >= 0");
  StepSource src(policy);
  if (c.mode() == Mode::Exact) {
    Scalar x = c.x();
    Scalar y = c.y();
    Scalar z = c.z();
    for (long step = 1; step <= n; ++step) {
      for (GeneratorId g : src.next()) act(g, x, y, z);
      if (!visit(step, Character(x, y, z), src.word())) return step;
    }
    return n;
  }
  auto [x, y, z] = c.to_doubles();
  for (long step = 1; step <= n; ++step) {
    for (GeneratorId g : src.next()) act(g, x, y, z);
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
      if (diagnostic)
        *diagnostic = "float orbit left the finite range at step " + std::to_string(step) + "; stopped after " +
                      std::to_string(step - 1) + " points";
      return step - 1;
    }
    if (!visit(step, Character::floating(x, y, z), src.word())) return step;
  }
  return n;
}

Orbit orbit(const Character& c, const OrbitPolicy& policy, long n) {
  Orbit o;
  if (n > 0) o.points.reserve(static_cast<std::size_t>(std::min<long>(n, 1'000'000)));
  orbit_visit(
      c, policy, n,
      [&](long step, const Character& p, std::string_view word) {
        o.points.push_back({step, p, std::string(word)});
        return true;
      },
      &o.diagnostic);
  return o;
}

std::vector<Orbit> orbit_chains(const Character& c, const OrbitPolicy& policy, long n, unsigned workers) {
  workers = std::max(1u, workers);
  std::vector<Orbit> out(workers);
  std::vector<std::thread> threads;
  for (unsigned k = 0; k < workers; ++k) {
    threads.emplace_back([&, k] {
      OrbitPolicy p = policy;
      p.seed = policy.seed + k;
      out[k] = orbit(c, p, n);
    });
  }
  for (auto& th : threads) th.join();
  return out;
}

// ---------------------------------------------------------------- ellipses

std::array<double, 2> Ellipse::point(double phi) const {
  const double s = std::sqrt(4.0 - x0 * x0);
  const double big_y = 2.0 * std::sqrt(rhs) / s;
  const double y = big_y * std::sin(phi);
  const double w = s * big_y * std::cos(phi);
  return {y, (x0 * y + w) / 2.0};
}

double Ellipse::angle(double y, double z) const {
  const double w = 2.0 * z - x0 * y;
  return std::atan2(y, w / std::sqrt(4.0 - x0 * x0));
}

Ellipse ellipse_E(double x0, double t) {
  if (!(x0 > -2.0 && x0 < 2.0)) throw std::invalid_argument("ellipse_E requires -2 < x0 < 2");
  const double rhs = t + 2.0 - x0 * x0;
  if (!(rhs > 0)) throw std::invalid_argument("ellipse_E: empty ellipse (t + 2 - x0^2 <= 0)");
  Ellipse e;
  e.x0 = x0;
  e.t = t;
  e.coef_sum = (2.0 - x0) / 4.0;
  e.coef_diff = (2.0 + x0) / 4.0;
  e.rhs = rhs;
  e.semi_sum = std::sqrt(rhs / e.coef_sum);
  e.semi_diff = std::sqrt(rhs / e.coef_diff);
  e.degenerate = e.coef_sum < kFloatTolerance || e.coef_diff < kFloatTolerance;
  return e;
}

double dehn_rotation_angle(double x0) {
  if (!(x0 > -2.0 && x0 < 2.0)) throw std::invalid_argument("dehn_rotation_angle requires -2 < x0 < 2");
  return std::acos(x0 / 2.0);
}

// ---------------------------------------------------------------- sampling

bool Window::contains(const Character& c) const {
  const auto p = c.to_doubles();
  for (int i = 0; i < 3; ++i)
    if (p[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)] ||
        p[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)])
      return false;
  return true;
}

Window Window::parse(std::string_view text) {
  std::vector<double> v;
  std::size_t i = 0;
  while (i <= text.size()) {
    const std::size_t j = std::min(text.find(',', i), text.size());
    const std::string_view tok = text.substr(i, j - i);
    double d = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty())
      throw ParseError("bad window component '" + std::string(tok) + "'");
    v.push_back(d);
    i = j + 1;
  }
  Window w;
  if (v.size() == 1) {
    if (!(v[0] > 0)) throw ParseError("window half-width must be positive");
    w.lo = {-v[0], -v[0], -v[0]};
    w.hi = {v[0], v[0], v[0]};
  } else if (v.size() == 6) {
    for (std::size_t k = 0; k < 3; ++k) {
      w.lo[k] = v[2 * k];
      w.hi[k] = v[2 * k + 1];
      if (!(w.hi[k] > w.lo[k])) throw ParseError("window bounds must satisfy lo < hi");
    }
  } else {
    throw ParseError("window needs 1 or 6 comma-separated numbers");
  }
  return w;
}

std::string Window::str() const {
  std::string s;
  for (std::size_t k = 0; k < 3; ++k) {
    if (k) s += ',';
    s += fmt(lo[k]) + "," + fmt(hi[k]);
  }
  return s;
}

double SampleSet::total_weight() const {
  double s = 0;
  for (const auto& x : samples) s += x.weight;
  return s;
}

SampleSet sample_level_set(double t, std::size_t n, const Window& window, std::uint64_t seed, unsigned workers) {
  SampleSet out;
  if (n == 0) return out;
  for (std::size_t k = 0; k < 3; ++k)
    if (!(window.hi[k] > window.lo[k]) || !std::isfinite(window.lo[k]) || !std::isfinite(window.hi[k]))
      throw std::invalid_argument("sample_level_set: window must be bounded and nondegenerate");
  const XProposal q = x_proposal(t, window.lo[0], window.hi[0]);
  if (q.pieces.empty()) {
    out.diagnostic = "window does not meet the level set kappa = " + fmt(t);
    return out;
  }
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  std::vector<WorkerOutput> parts(workers);
  std::vector<std::thread> threads;
  for (unsigned k = 0; k < workers; ++k) {
    const std::size_t quota = n / workers + (k < n % workers ? 1 : 0);
    threads.emplace_back([&, k, quota] { parts[k] = sample_worker(t, quota, window, q, seed + k); });
  }
  for (auto& th : threads) th.join();

  for (const auto& p : parts) out.proposals += p.proposals;
  bool exhausted = false;
  for (const auto& p : parts) {
    exhausted = exhausted || p.exhausted;
    for (const auto& s : p.samples)
      out.samples.push_back({Character::floating(s.p[0], s.p[1], s.p[2]), s.ratio / static_cast<double>(out.proposals)});
  }
  if (out.samples.empty())
    out.diagnostic = "no proposal landed in the window on kappa = " + fmt(t);
  else if (exhausted)
    out.diagnostic = "acceptance rate too low; returned " + std::to_string(out.samples.size()) + " of " +
                     std::to_string(n) + " samples";
  return out;
}

double estimate_area_uniform(double t, const Window& window, std::size_t n, std::uint64_t seed) {
  if (n == 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(window.lo[0], window.hi[0]);
  std::uniform_real_distribution<double> uy(window.lo[1], window.hi[1]);
  const double rect = (window.hi[0] - window.lo[0]) * (window.hi[1] - window.lo[1]);
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    const double d2 = (x * x - 4.0) * (y * y - 4.0) + 4.0 * (t - 2.0);
    if (!(d2 > 0)) continue;
    const double d = std::sqrt(d2);
    for (double sheet : {1.0, -1.0}) {
      const double z = (x * y + sheet * d) / 2.0;
      if (z >= window.lo[2] && z <= window.hi[2]) sum += 1.0 / d;
    }
  }
  return sum * rect / static_cast<double>(n) / (2.0 * kPi * kPi);
}

TorusPoint gl2z_torus_action(const Gl2zClass::Matrix& m, const TorusPoint& p) {
  const std::int64_t det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det != 1 && det != -1) throw std::invalid_argument("gl2z_torus_action requires |det m| = 1");
  auto wrap = [](double v) {
    double r = v - std::floor(v);
    return r >= 1.0 ? 0.0 : r;
  };
  const double a = static_cast<double>(m[0][0]) * p[0] + static_cast<double>(m[0][1]) * p[1];
  const double b = static_cast<double>(m[1][0]) * p[0] + static_cast<double>(m[1][1]) * p[1];
  return {wrap(a), wrap(b)};
}

// -------------------------------------------------------------- statistics

Histogram::Histogram(HistogramSpec spec) : spec_(std::move(spec)) {
  if (spec_.bins < 2) throw std::invalid_argument("histogram needs at least 2 bins per axis");
  if (spec_.axes.empty() || spec_.axes.size() > 3) throw std::invalid_argument("histogram needs 1 to 3 axes");
  std::size_t cells = 1;
  for (std::size_t k = 0; k < spec_.axes.size(); ++k) cells *= static_cast<std::size_t>(spec_.bins);
  w_.assign(cells + 1, 0.0);
  w2_.assign(cells + 1, 0.0);
}

std::size_t Histogram::cell_of(const std::array<double, 3>& p) const {
  std::size_t idx = 0;
  for (int axis : spec_.axes) {
    const auto a = static_cast<std::size_t>(axis);
    const double lo = spec_.window.lo[a];
    const double hi = spec_.window.hi[a];
    const double v = p[a];
    if (!(v >= lo && v <= hi)) return w_.size() - 1;
    auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * spec_.bins);
    b = std::min(b, static_cast<std::size_t>(spec_.bins - 1));
    idx = idx * static_cast<std::size_t>(spec_.bins) + b;
  }
  return idx;
}

void Histogram::add(const std::array<double, 3>& p, double weight) {
  const std::size_t i = cell_of(p);
  w_[i] += weight;
  w2_[i] += weight * weight;
}

void Histogram::add(const Character& c, double weight) { add(c.to_doubles(), weight); }

void Histogram::merge(const Histogram& other) {
  if (other.w_.size() != w_.size()) throw std::invalid_argument("histogram merge: shapes differ");
  for (std::size_t i = 0; i < w_.size(); ++i) {
    w_[i] += other.w_[i];
    w2_[i] += other.w2_[i];
  }
}

double Histogram::total() const {
  double s = 0;
  for (double v : w_) s += v;
  return s;
}

double chi_square_critical_1pct(int dof) {
  const boost::math::chi_squared_distribution<double> dist(std::max(1, dof));
  return boost::math::quantile(boost::math::complement(dist, 0.01));
}

ChiSquare equidistribution_stat(const Histogram& a, const Histogram& b) {
  if (a.cells() != b.cells()) throw std::invalid_argument("equidistribution_stat: histogram shapes differ");
  const double wa = a.total();
  const double wb = b.total();
  if (!(wa > 0) || !(wb > 0)) throw std::invalid_argument("equidistribution_stat: empty sample");
  ChiSquare r;
  int used = 0;
  for (std::size_t i = 0; i < a.cells(); ++i) {
    if (a.weight(i) == 0 && b.weight(i) == 0) continue;
    ++used;
    const double p = a.weight(i) / wa;
    const double q = b.weight(i) / wb;
    const double var = a.weight_sq(i) / (wa * wa) + b.weight_sq(i) / (wb * wb);
    r.statistic += (p - q) * (p - q) / var;
  }
  r.dof = std::max(1, used - 1);
  r.p_value = boost::math::gamma_q(r.dof / 2.0, r.statistic / 2.0);
  r.critical_1pct = chi_square_critical_1pct(r.dof);
  return r;
}

ChiSquare equidistribution_stat(const std::vector<LevelSample>& a, const std::vector<LevelSample>& b,
                                const HistogramSpec& spec) {
  if (a.empty() || b.empty()) throw std::invalid_argument("equidistribution_stat: empty sample");
  Histogram ha(spec);
  Histogram hb(spec);
  for (const auto& s : a) ha.add(s.point, s.weight);
  for (const auto& s : b) hb.add(s.point, s.weight);
  return equidistribution_stat(ha, hb);
}

KolmogorovSmirnov ks_uniform(const std::vector<double>& values, const std::vector<double>& weights) {
  if (values.empty() || values.size() != weights.size())
    throw std::invalid_argument("ks_uniform: need equally many values and weights");
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  double total = 0;
  double total_sq = 0;
  for (double w : weights) {
    total += w;
    total_sq += w * w;
  }
  KolmogorovSmirnov r;
  double cum = 0;
  for (std::size_t i : order) {
    const double v = std::clamp(values[i], 0.0, 1.0);
    r.d = std::max(r.d, std::abs(cum / total - v));
    cum += weights[i];
    r.d = std::max(r.d, std::abs(cum / total - v));
  }
  r.n_eff = total * total / total_sq;
  const double sn = std::sqrt(r.n_eff);
  r.critical_1pct = 1.6276 / sn;
  const double lambda = (sn + 0.12 + 0.11 / sn) * r.d;
  double q = 0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-12) break;
  }
  r.p_value = std::clamp(q, 0.0, 1.0);
  if (lambda < 0.2) r.p_value = 1.0;
  return r;
}

std::vector<LevelSample> as_samples(const Orbit& o, std::size_t thin) {
  thin = std::max<std::size_t>(1, thin);
  std::vector<LevelSample> out;
  for (std::size_t i = thin - 1; i < o.points.size(); i += thin) out.push_back({o.points[i].point, 1.0});
  return out;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* v = std::getenv("CHARVAR_SEED");
  if (v == nullptr) return fallback;
  const std::string_view s(v);
  std::uint64_t seed = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return fallback;
  return seed;
}

// ----------------------------------------------------------------- output

std::string orbit_jsonl(const Orbit& o) {
  std::string out;
  for (const auto& p : o.points) {
    nlohmann::ordered_json j;
    j["step"] = p.step;
    j["x"] = scalar_json(p.point.x());
    j["y"] = scalar_json(p.point.y());
    j["z"] = scalar_json(p.point.z());
    j["kappa"] = scalar_json(kappa(p.point));
    j["word"] = p.word;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string orbit_csv(const Orbit& o) {
  std::string out = "step,x,y,z,kappa,word\n";
  for (const auto& p : o.points) {
    out += std::to_string(p.step) + "," + p.point.x().str() + "," + p.point.y().str() + "," + p.point.z().str() + "," +
           kappa(p.point).str() + "," + p.word + "\n";
  }
  return out;
}

std::string samples_jsonl(const SampleSet& s) {
  std::string out;
  long step = 0;
  for (const auto& x : s.samples) {
    nlohmann::ordered_json j;
    j["step"] = ++step;
    j["x"] = scalar_json(x.point.x());
    j["y"] = scalar_json(x.point.y());
    j["z"] = scalar_json(x.point.z());
    j["kappa"] = scalar_json(kappa(x.point));
    j["weight"] = x.weight;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string samples_csv(const SampleSet& s) {
  std::string out = "step,x,y,z,kappa,weight\n";
  long step = 0;
  for (const auto& x : s.samples) {
    out += std::to_string(++step) + "," + x.point.x().str() + "," + x.point.y().str() + "," + x.point.z().str() + "," +
           kappa(x.point).str() + "," + fmt(x.weight) + "\n";
  }
  return out;
}

}  // namespace charvar
