#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "charvar/character.hpp"
#include "charvar/dynamics.hpp"
#include "charvar/reduction.hpp"
#include "charvar/render.hpp"
#include "charvar/trace_calculus.hpp"
#include "charvar/verify.hpp"

namespace charvar::cli {

namespace {

struct Options {
  std::string mode;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out;
  std::string format;

  std::vector<std::string> coords;
  std::string word;
  std::string at;

  double t = 0;
  long steps = 1000;
  std::size_t n = 1000;
  std::string policy = "uniform";
  std::string start;
  std::string window = "2";

  std::string kind = "contour";
  std::string plane = "xy";
  double slice = 0;
  std::string view = "3";
  int width = 512;
  int height = 512;
  bool overlay = false;

  std::string suite = "all";
};

nlohmann::ordered_json scalar_json(const Scalar& s) {
  if (s.is_exact()) return s.str();
  return s.to_double();
}

Mode mode_or(const Options& o, Mode fallback) { return o.mode.empty() ? fallback : parse_mode(o.mode); }

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

Character parse_triple(const std::string& text, Mode m) {
  const auto p = split_commas(text);
  if (p.size() != 3) throw ParseError("expected x,y,z but got '" + text + "'");
  return Character::parse(p[0], p[1], p[2], m);
}

// A float point on kappa = t: (a, a, z) or (0.3, 0.5, z) with z the larger root.
Character default_start(double t) {
  if (t == -2.0) return Character::floating(0, 0, 0);
  double x = 0.3, y = 0.5;
  if (t < 2.0) {
    const double s = std::sqrt(2.0 - t);
    x = y = t > -2.0 ? std::sqrt(2.0 - s) : std::sqrt(5.0 + 2.0 * s);
  }
  const double disc = (x * x - 4.0) * (y * y - 4.0) + 4.0 * (t - 2.0);
  return Character::floating(x, y, (x * y + std::sqrt(std::max(0.0, disc))) / 2.0);
}

Character orbit_start(const Options& o, Mode m, std::uint64_t seed) {
  if (o.start == "omega") {
    if (m == Mode::Exact) throw std::invalid_argument("--start omega is a float point; use --mode float");
    return sample_omega_zero(o.t, 1, seed).front();
  }
  if (!o.start.empty()) return parse_triple(o.start, m);
  if (m == Mode::Exact) {
    if (o.t == -2.0) return Character::exact(0, 0, 0);
    throw std::invalid_argument("exact orbits need a rational --start x,y,z");
  }
  return default_start(o.t);
}

Canvas make_canvas(const Options& o) {
  Canvas cv;
  cv.width = o.width;
  cv.height = o.height;
  const auto p = split_commas(o.view);
  auto num = [](const std::string& s) { return Scalar::parse(s, Mode::Float).to_double(); };
  if (p.size() == 1) {
    const double w = num(p[0]);
    cv.u_lo = cv.v_lo = -w;
    cv.u_hi = cv.v_hi = w;
  } else if (p.size() == 4) {
    cv.u_lo = num(p[0]);
    cv.u_hi = num(p[1]);
    cv.v_lo = num(p[2]);
    cv.v_hi = num(p[3]);
  } else {
    throw ParseError("--view takes w or ulo,uhi,vlo,vhi");
  }
  cv.validate();
  return cv;
}

void emit(const Options& o, const std::string& bytes, std::ostream& out) {
  if (o.out.empty()) {
    out << bytes;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + o.out + "' for writing");
  f << bytes;
  if (!f) throw std::runtime_error("write to '" + o.out + "' failed");
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw ParseError("unsupported --format '" + f + "'");
}

// Step 0 is the start point; later steps follow the policy.
Orbit with_start(const Character& start, Orbit o) {
  o.points.insert(o.points.begin(), OrbitPoint{0, start, ""});
  return o;
}

std::string tag_chain(const std::string& text, unsigned chain, bool csv) {
  std::string out;
  std::stringstream ss(text);
  std::string line;
  bool first = true;
  while (std::getline(ss, line)) {
    if (csv && first) {
      first = false;
      if (chain == 0) out += "chain," + line + "\n";
      continue;
    }
    if (csv)
      out += std::to_string(chain) + "," + line + "\n";
    else
      out += "{\"chain\":" + std::to_string(chain) + "," + line.substr(1) + "\n";
  }
  return out;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const Mode m = mode_or(o, Mode::Exact);
  const Character c = Character::parse(o.coords[0], o.coords[1], o.coords[2], m);
  const ComponentLabel label = component_of(c);
  nlohmann::ordered_json j;
  j["input"] = nlohmann::ordered_json::parse(to_json(c));
  j["kappa"] = scalar_json(kappa(c));
  j["component"] = label.name();
  j["form"] = std::string(to_string(classify_form(c)));
  j["boundary_ambiguous"] = label.boundary_ambiguous;
  j["mode"] = std::string(to_string(m));
  emit(o, j.dump() + "\n", out);
  return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const Mode m = mode_or(o, Mode::Exact);
  const Character c = Character::parse(o.coords[0], o.coords[1], o.coords[2], m);
  emit(o, reduce(c).to_json() + "\n", out);
  return kExitOk;
}

int cmd_tracepoly(const Options& o, std::ostream& out) {
  const FreeWord w = FreeWord::parse(o.word);
  const TracePolynomial f = trace_polynomial(w);
  std::string text = f.str() + "\n";
  if (!o.at.empty()) text += f.evaluate(parse_triple(o.at, mode_or(o, Mode::Exact))).str() + "\n";
  emit(o, text, out);
  return kExitOk;
}

int cmd_orbit(const Options& o, std::ostream& out, std::ostream& err) {
  const Mode m = mode_or(o, Mode::Float);
  const std::string format = o.format.empty() ? "jsonl" : o.format;
  check_format(format, {"jsonl", "csv"});
  if (o.steps < 0) throw std::invalid_argument("--steps must be nonnegative");
  const std::uint64_t seed = seed_from_env(o.seed);
  const Character start = orbit_start(o, m, seed);
  const OrbitPolicy policy = OrbitPolicy::parse(o.policy, seed);
  const bool csv = format == "csv";

  const auto chains = orbit_chains(start, policy, o.steps, std::max(1u, o.workers));
  std::string text;
  for (unsigned k = 0; k < chains.size(); ++k) {
    const Orbit full = with_start(start, chains[k]);
    const std::string part = csv ? orbit_csv(full) : orbit_jsonl(full);
    text += chains.size() == 1 ? part : tag_chain(part, k, csv);
    if (!chains[k].diagnostic.empty()) err << "chain " << k << ": " << chains[k].diagnostic << "\n";
  }
  emit(o, text, out);
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.mode.empty() && parse_mode(o.mode) == Mode::Exact)
    throw std::invalid_argument("the sampler works in float mode only");
  const std::string format = o.format.empty() ? "jsonl" : o.format;
  check_format(format, {"jsonl", "csv"});
  const SampleSet s = sample_level_set(o.t, o.n, Window::parse(o.window), seed_from_env(o.seed), std::max(1u, o.workers));
  if (!s.diagnostic.empty()) err << s.diagnostic << "\n";
  emit(o, format == "csv" ? samples_csv(s) : samples_jsonl(s), out);
  return kExitOk;
}

int cmd_render(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string format = o.format.empty() ? "svg" : o.format;
  check_format(format, {"svg", "ppm"});
  const ImageFormat f = parse_image_format(format);
  const Canvas cv = make_canvas(o);
  const Plane plane = parse_plane(o.plane);
  const std::uint64_t seed = seed_from_env(o.seed);

  if (o.kind == "contour") {
    emit(o, render_level_contour(o.t, plane, o.slice, cv, f, o.overlay), out);
    return kExitOk;
  }
  std::vector<LevelSample> pts;
  double level = o.t;
  if (o.kind == "orbit") {
    const Mode m = mode_or(o, Mode::Float);
    const Character start = orbit_start(o, m, seed);
    level = kappa(start).to_double();
    const auto chains = orbit_chains(start, OrbitPolicy::parse(o.policy, seed), o.steps, std::max(1u, o.workers));
    for (const auto& c : chains) {
      const auto s = as_samples(with_start(start, c));
      pts.insert(pts.end(), s.begin(), s.end());
      if (!c.diagnostic.empty()) err << c.diagnostic << "\n";
    }
  } else if (o.kind == "samples") {
    pts = sample_level_set(o.t, o.n, Window::parse(o.window), seed, std::max(1u, o.workers)).samples;
  } else {
    throw ParseError("unknown --kind '" + o.kind + "' (contour | orbit | samples)");
  }
  const ScatterImage img = render_orbit_scatter(pts, plane, cv, f, level);
  if (img.skipped > 0) err << "skipped " << img.skipped << " points off the level set\n";
  emit(o, img.bytes, out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<std::string_view> suites;
  if (o.suite == "all") {
    suites = verify_suite_names();
  } else {
    const auto& names = verify_suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end())
      throw ParseError("unknown suite '" + o.suite + "'");
    suites.push_back(o.suite);
  }
  const std::uint64_t seed = seed_from_env(o.seed);
  std::string text;
  bool ok = true;
  for (auto name : suites) {
    const SuiteReport r = run_verify_suite(name, seed);
    text += r.name + ": " + std::to_string(r.checks) + " checks, " + std::to_string(r.failures) + " failures\n";
    for (const auto& msg : r.messages) text += "  " + msg + "\n";
    ok = ok && r.ok();
  }
  emit(o, text, out);
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Automorphisms of x^2 + y^2 + z^2 - xyz - 2 acting on real character varieties", "charvar"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--mode", o.mode, "exact | float");
    s->add_option("--out", o.out, "Output file (default stdout)");
    s->add_option("--seed", o.seed, "Random seed (CHARVAR_SEED overrides)");
  };

  auto* classify = app.add_subcommand("classify", "Component of the level set containing x y z");
  classify->add_option("coords", o.coords, "x y z")->expected(3)->required();
  common(classify);

  auto* reduce_cmd = app.add_subcommand("reduce", "Trace-reduction normal form of x y z");
  reduce_cmd->add_option("coords", o.coords, "x y z")->expected(3)->required();
  common(reduce_cmd);

  auto* trace = app.add_subcommand("tracepoly", "Trace polynomial of a word in X, Y");
  trace->add_option("word", o.word, "e.g. \"X Y^-2 X^3\"")->required();
  trace->add_option("--at", o.at, "Evaluate at x,y,z");
  common(trace);

  auto* orbit_cmd = app.add_subcommand("orbit", "Orbit of a point under a policy");
  orbit_cmd->add_option("--t", o.t, "Level of the default start point");
  orbit_cmd->add_option("--steps", o.steps, "Number of steps")->capture_default_str();
  orbit_cmd->add_option("--policy", o.policy, "uniform | cycle:<word> | reduced:<n>")->capture_default_str();
  orbit_cmd->add_option("--start", o.start, "x,y,z or omega");
  orbit_cmd->add_option("--workers", o.workers, "Independent chains, seeds seed..seed+N-1")->capture_default_str();
  orbit_cmd->add_option("--format", o.format, "jsonl | csv");
  common(orbit_cmd);

  auto* sample = app.add_subcommand("sample", "Weighted samples of the invariant measure on a level set");
  sample->add_option("--t", o.t, "Level")->required();
  sample->add_option("--n", o.n, "Accepted samples")->capture_default_str();
  sample->add_option("--window", o.window, "w or xlo,xhi,ylo,yhi,zlo,zhi")->capture_default_str();
  sample->add_option("--workers", o.workers, "Worker streams")->capture_default_str();
  sample->add_option("--format", o.format, "jsonl | csv");
  common(sample);

  auto* render = app.add_subcommand("render", "Level-set slice or scatter image");
  render->add_option("--t", o.t, "Level")->required();
  render->add_option("--kind", o.kind, "contour | orbit | samples")->capture_default_str();
  render->add_option("--plane", o.plane, "xy | yz | zx")->capture_default_str();
  render->add_option("--slice", o.slice, "Value of the remaining coordinate")->capture_default_str();
  render->add_option("--view", o.view, "w or ulo,uhi,vlo,vhi")->capture_default_str();
  render->add_option("--width", o.width, "Pixels")->capture_default_str();
  render->add_option("--height", o.height, "Pixels")->capture_default_str();
  render->add_flag("--overlay", o.overlay, "Draw the projection-region boundary (xy only)");
  render->add_option("--steps", o.steps, "Orbit steps for --kind orbit")->capture_default_str();
  render->add_option("--policy", o.policy, "Orbit policy for --kind orbit")->capture_default_str();
  render->add_option("--start", o.start, "Orbit start x,y,z or omega");
  render->add_option("--n", o.n, "Samples for --kind samples")->capture_default_str();
  render->add_option("--window", o.window, "Sampling window for --kind samples")->capture_default_str();
  render->add_option("--workers", o.workers, "Worker streams")->capture_default_str();
  render->add_option("--format", o.format, "svg | ppm");
  common(render);

  auto* verify = app.add_subcommand("verify", "Randomized self-checks");
  verify->add_option("--suite", o.suite, "all | group | trace | reduction | hyperbolic | dynamics")
      ->capture_default_str();
  common(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    if (*classify) return cmd_classify(o, out);
    if (*reduce_cmd) return cmd_reduce(o, out);
    if (*trace) return cmd_tracepoly(o, out);
    if (*orbit_cmd) return cmd_orbit(o, out, err);
    if (*sample) return cmd_sample(o, out, err);
    if (*render) return cmd_render(o, out, err);
    if (*verify) return cmd_verify(o, out);
  } catch (const std::exception& e) {
    err << "charvar: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitPrecondition;
}

}  // namespace charvar::cli
