#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nk/error.hpp"
#include "nk/json_io.hpp"

namespace nk::cli {

namespace {

using json_io::Json;

struct Output {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

// Failure while reading or decoding input; always exit code 2.
struct InputError {
  std::string code;
  std::string message;
  std::string context;
};

double default_tolerance() {
  if (const char* env = std::getenv("NK_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e-8;
}

Json error_json(std::string_view code, std::string_view message, std::string_view context) {
  return {{"error", {{"code", code}, {"message", message}, {"context", context}}}};
}

int report_error(const Output& o, std::string_view code, std::string_view message,
                 std::string_view context, int exit_code) {
  if (o.json) {
    o.out << json_io::canonical_dump(error_json(code, message, context)) << '\n';
  } else {
    o.err << "error [" << code << "]: " << message;
    if (!context.empty()) o.err << " (" << context << ")";
    o.err << '\n';
  }
  return exit_code;
}

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw InputError{"io_error", "cannot open input file", path};
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError{"parse_error", e.what(), origin};
  }
}

struct InputSpec {
  std::vector<std::string> paths;
  std::string inline_data;
};

Json load_single(const InputSpec& spec, std::istream& in) {
  if (!spec.inline_data.empty()) return parse_text(spec.inline_data, "--data");
  if (spec.paths.size() != 1)
    throw InputError{"usage", "exactly one of --input or --data is required", ""};
  return parse_text(read_source(spec.paths.front(), in), spec.paths.front());
}

// Decodes input with library validation errors mapped to InputError.
template <typename F>
auto decode(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError{std::string(to_string(e.code())), e.what(), e.context()};
  } catch (const Json::exception& e) {
    throw InputError{"malformed_input", e.what(), ""};
  }
}

void emit(const Output& o, const Json& payload, const std::string& human) {
  if (o.json) {
    o.out << json_io::canonical_dump(payload) << '\n';
  } else {
    o.out << human;
  }
}

std::string format_complex(Complex c) {
  std::ostringstream os;
  os << std::setprecision(12);
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

std::string format_poly(const Poly& p, const char* var = "z") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= p.degree(); ++i) {
    if (p[i] == Complex{}) continue;
    if (!first) os << " + ";
    first = false;
    os << format_complex(p[i]);
    if (i == 1) os << "*" << var;
    if (i > 1) os << "*" << var << "^" << i;
  }
  return os.str();
}

std::string human_map(const BasedRationalMap& m) {
  std::ostringstream os;
  os << "k = " << m.k() << "\np(z) = " << format_poly(m.p()) << "\nq(z) = " << format_poly(m.q())
     << "\n";
  return os.str();
}

template <Surface S>
std::string human_point(const TransversePoint<S>& d) {
  std::ostringstream os;
  os << to_string(S) << " point, n = " << d.n() << "\nx(z) = " << format_poly(d.x())
     << "\ny(z) = " << format_poly(d.y()) << "\nr(z) = " << format_poly(d.r()) << "\n";
  return os.str();
}

// ---- verify --------------------------------------------------------------

struct VerifyOutcome {
  int code = kOk;
  Json payload;
  std::string human;
};

VerifyOutcome verify_one(const Json& doc, const std::string& kind, double tol) {
  VerifyOutcome o;
  try {
    const auto [p, q] = decode([&] { return json_io::map_polys_from_json(doc); });
    // A pair with a common root is a non-member, not malformed input.
    const auto report = decode([&, &p = p, &q = q] {
      return kind == "nk" ? nk_membership_report(p, q, tol) : strongly_centred_report(p, q, tol);
    });
    o.payload = json_io::to_json(report);
    o.payload["kind"] = kind;
    o.payload["k"] = q.degree();
    std::ostringstream os;
    os << (report.member ? "member" : "non-member") << " (" << kind << ", k = " << q.degree()
       << ")\n";
    for (const auto& c : report.checks)
      os << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << ": residual " << c.residual
         << " (threshold " << c.threshold << ")\n";
    o.human = os.str();
    if (!report.member) {
      for (const auto& c : report.checks)
        if (!c.pass) {
          o.payload["failing_check"] = c.name;
          break;
        }
    }
    o.code = report.member ? kOk : kNegative;
  } catch (const InputError& e) {
    o.payload = error_json(e.code, e.message, e.context);
    o.human = "error [" + e.code + "]: " + e.message + (e.context.empty() ? "" : " (" + e.context + ")") + "\n";
    o.code = kMalformed;
  }
  return o;
}

int cmd_verify(const Output& o, const InputSpec& spec, const std::string& kind, double tol,
               std::istream& in) {
  if (!spec.inline_data.empty() || spec.paths.size() <= 1) {
    VerifyOutcome v;
    try {
      v = verify_one(load_single(spec, in), kind, tol);
    } catch (const InputError& e) {
      return report_error(o, e.code, e.message, e.context, kMalformed);
    }
    if (o.json) {
      o.out << json_io::canonical_dump(v.payload) << '\n';
    } else {
      (v.code == kMalformed ? o.err : o.out) << v.human;
    }
    return v.code;
  }
  // Batch: files are independent and processed concurrently; results are
  // reported in input order.
  std::vector<std::future<VerifyOutcome>> jobs;
  for (const auto& path : spec.paths)
    jobs.push_back(std::async(std::launch::async, [path, kind, tol] {
      std::istringstream no_stdin;
      try {
        return verify_one(parse_text(read_source(path, no_stdin), path), kind, tol);
      } catch (const InputError& e) {
        VerifyOutcome v;
        v.payload = error_json(e.code, e.message, e.context);
        v.human = "error [" + e.code + "]: " + e.message + "\n";
        v.code = kMalformed;
        return v;
      }
    }));
  Json all = Json::array();
  int worst = kOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    VerifyOutcome v = jobs[i].get();
    worst = std::max(worst, v.code);
    Json entry = v.payload;
    entry["input"] = spec.paths[i];
    all.push_back(std::move(entry));
    if (!o.json) o.out << spec.paths[i] << ": " << v.human;
  }
  if (o.json) o.out << json_io::canonical_dump(all) << '\n';
  return worst;
}

// ---- convert / cover / fiber ---------------------------------------------

int cmd_convert(const Output& o, const Json& doc) {
  if (doc.is_object() && doc.contains("surface")) {
    const auto surface = doc.at("surface");
    if (surface == "D1") {
      const auto d = decode([&] { return json_io::d1_from_json(doc); });
      const auto m = d1_to_map(d);
      emit(o, json_io::to_json(m), human_map(m));
      return kOk;
    }
    if (surface == "D0") {
      const auto d = decode([&] { return json_io::d0_from_json(doc); });
      const auto m = d0_to_map(d);
      emit(o, json_io::to_json(m), human_map(m));
      return kOk;
    }
    throw InputError{"malformed_input", "surface must be \"D0\" or \"D1\"", surface.dump()};
  }
  const auto m = decode([&] { return json_io::map_from_json(doc); });
  if (m.k() % 2 == 0) {
    const auto d = map_to_d1(m);
    emit(o, json_io::to_json(d), human_point(d));
  } else {
    const auto d = map_to_d0(m);
    emit(o, json_io::to_json(d), human_point(d));
  }
  return kOk;
}

int cmd_cover(const Output& o, const Json& doc, bool compare) {
  const auto m = decode([&] { return json_io::map_from_json(doc); });
  const auto covered = cover_map_on_maps(m);
  Json payload = json_io::to_json(covered);
  std::string human = human_map(covered);
  if (compare) {
    const auto cmp = compare_cover_recipes(m);
    payload["recipe_comparison"] = json_io::to_json(cmp);
    std::ostringstream os;
    os << "literal p(z)^2 mod z q(z) = " << format_poly(cmp.literal)
       << "\n  agrees with the surface route mod q to " << cmp.difference_mod_q
       << ", value at 0: " << format_complex(cmp.literal_at_zero) << " vs "
       << format_complex(cmp.surface_at_zero) << "\n";
    human += os.str();
  }
  emit(o, payload, human);
  return kOk;
}

int cmd_fiber(const Output& o, const Json& doc) {
  const auto target = decode([&] { return json_io::d0_from_json(doc); });
  const auto f = fiber(target);
  std::ostringstream os;
  os << f.points.size() << " preimages in " << f.orbits.size() << " Z2-orbits\n";
  for (std::size_t i = 0; i < f.points.size(); ++i)
    os << "[" << i << "] x(z) = " << format_poly(f.points[i].x())
       << ", y(z) = " << format_poly(f.points[i].y()) << "\n";
  emit(o, json_io::to_json(f), os.str());
  return kOk;
}

// ---- sample / flow / residues --------------------------------------------

int cmd_sample(const Output& o, int k, std::uint64_t seed) {
  const auto s = sample_Nk(k, seed);
  Json payload = json_io::to_json(s.map);
  payload["parameters"] = s.parameters;
  payload["seed"] = seed;
  std::ostringstream os;
  os << human_map(s.map) << "real parameters: " << s.parameters.size() << "\n";
  emit(o, payload, os.str());
  return kOk;
}

struct FlowOptions {
  int k = 3;
  double t0 = 0.1;
  double t1 = 1.0;
  std::uint64_t seed = 0;
  bool sigma_fixed = false;
  double perturbation = 1e-6;
  double rtol = 1e-10;
  double beta_exponent = 0.0;
};

int cmd_flow(const Output& o, const FlowOptions& f) {
  NahmState initial = pole_model_state(f.k, f.t0);
  for (int i = 1; i < 4; ++i)
    initial.T[i] += random_anti_hermitian(f.k, f.perturbation, f.sigma_fixed,
                                          f.seed * 4 + static_cast<std::uint64_t>(i));
  FlowControls controls;
  controls.rtol = f.rtol;
  controls.beta_scaling_exponent = f.beta_exponent;
  const auto report = integrate(initial, f.t1, controls);
  Json payload = json_io::to_json(report);
  payload["config"] = {{"k", f.k},           {"t0", f.t0},
                       {"t1", f.t1},         {"seed", f.seed},
                       {"sigma_fixed", f.sigma_fixed}, {"perturbation", f.perturbation},
                       {"rtol", f.rtol},     {"beta_exponent", f.beta_exponent}};
  std::ostringstream os;
  os << "Nahm flow k = " << f.k << " from t = " << f.t0 << " to t = " << f.t1 << "\n"
     << "  steps accepted/rejected: " << report.stats.accepted << "/" << report.stats.rejected
     << "\n  max anti-Hermitian drift: " << report.max_anti_hermitian_drift
     << "\n  beta spectrum drift: " << report.beta_spectrum_drift
     << "\n  beta char-poly drift: " << report.beta_charpoly_drift
     << "\n  sigma residual: " << report.sigma_residuals.front() << " -> "
     << report.sigma_residuals.back() << "\n";
  emit(o, payload, os.str());
  return kOk;
}

int cmd_residues(const Output& o, int k) {
  const auto r = principal_residues(k);
  Json pairs = Json::array();
  std::ostringstream os;
  os << "principal residues for k = " << k << " lie in su(k)^sigma: "
     << (is_in_sigma_subalgebra(r.r1, 1e-12) && is_in_sigma_subalgebra(r.r2, 1e-12) &&
                 is_in_sigma_subalgebra(r.r3, 1e-12)
             ? "yes"
             : "no")
     << "\n";
  for (const auto& s : symmetric_pair_table(k)) {
    pairs.push_back(json_io::to_json(s));
    os << "case (" << to_string(s.tag) << "): G = " << s.group << ", K = " << s.subgroup
       << ", dim G = " << s.dim_group << ", dim K = " << s.dim_subgroup
       << ", dim quotient = " << s.quotient_dimension() << "\n";
  }
  Json payload = {{"k", k},
                  {"R1", json_io::to_json(r.r1)},
                  {"R2", json_io::to_json(r.r2)},
                  {"R3", json_io::to_json(r.r3)},
                  {"J", json_io::to_json(form_matrix_J(k))},
                  {"symmetric_pairs", std::move(pairs)}};
  emit(o, payload, os.str());
  return kOk;
}

// ---- spectral ------------------------------------------------------------

struct CurveAndSection {
  CurvePoly curve;
  SpectralSection section;
};

CurveAndSection curve_and_section(const Json& doc) {
  return decode([&] {
    if (!doc.is_object() || !doc.contains("curve") || !doc.contains("section"))
      throw Error(ErrorCode::kMalformedInput, "expected {\"curve\": ..., \"section\": ...}");
    CurvePoly curve = json_io::curve_from_json(doc.at("curve"));
    SpectralSection section(json_io::bipoly_from_json(doc.at("section")), curve);
    return CurveAndSection{std::move(curve), std::move(section)};
  });
}

int cmd_check_section(const Output& o, const Json& doc, double tol) {
  const auto cs = curve_and_section(doc);
  const auto r = section_product(cs.section, cs.curve, tol);
  Json payload = {{"pass", r.pass}, {"residual", r.residual}, {"reduced", json_io::to_json(r.reduced)}};
  std::ostringstream os;
  os << "s(zeta,eta) s(zeta,-eta) = 1 mod P: " << (r.pass ? "yes" : "no") << " (residual "
     << r.residual << ")\n";
  emit(o, payload, os.str());
  return r.pass ? kOk : kNegative;
}

int cmd_zero_section(const Output& o, const Json& doc, double tol) {
  const auto cs = curve_and_section(doc);
  // Default sample points off the real and imaginary axes.
  std::vector<Complex> grid{{0.5, 0.25}, {-0.75, 0.5}, {1.25, -0.5}, {-0.25, -1.0}};
  if (doc.contains("grid"))
    grid = decode([&] {
      std::vector<Complex> g;
      for (const auto& z : doc.at("grid")) g.push_back(json_io::complex_from_json(z));
      return g;
    });
  const auto r = eval_on_zero_section(cs.section, cs.curve, grid, tol);
  std::ostringstream os;
  for (const auto& s : r.samples)
    os << "zeta = " << format_complex(s.zeta) << (s.on_curve ? " (on curve)" : "")
       << ": s(zeta,0) = " << format_complex(s.value) << (s.plus_minus_one ? "" : "  [not +-1]")
       << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  emit(o, json_io::to_json(r), os.str());
  return r.on_curve_pm_one ? kOk : kNegative;
}

int cmd_sbar(const Output& o, const Json& doc) {
  const auto cs = curve_and_section(doc);
  const auto r = build_sbar(cs.section, cs.curve);
  std::ostringstream os;
  os << "sbar has eta-degree " << r.sbar.eta_degree() << "; residual mod P "
     << r.residual_mod_p << ", mod eta " << r.residual_mod_eta << "\n";
  for (int j = 0; j <= r.sbar.eta_degree(); ++j)
    os << "  eta^" << j << ": " << format_poly(r.sbar[j], "zeta") << "\n";
  emit(o, json_io::to_json(r), os.str());
  return kOk;
}

int cmd_rescale(const Output& o, const Json& doc, Complex lambda) {
  const auto curve = decode([&] {
    return json_io::curve_from_json(doc.is_object() && doc.contains("curve") ? doc.at("curve") : doc);
  });
  const auto out = rescale_curve(curve, lambda);
  std::ostringstream os;
  for (int i = 1; i <= out.n(); ++i)
    os << "a_" << i << "(zeta) = " << format_poly(out.a()[static_cast<std::size_t>(i - 1)], "zeta") << "\n";
  emit(o, json_io::to_json(out), os.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Rational-map, Hilbert-scheme and Nahm-flow tools for N_k", "nk"};
  app.require_subcommand(1);

  bool json = false;
  double tol = default_tolerance();
  app.add_flag("--json", json, "Emit canonical JSON");
  app.add_option("--tol", tol, "Equality tolerance (env NK_TOL)")->check(CLI::PositiveNumber);

  InputSpec input;
  auto add_input = [&](CLI::App* sub, bool many = false) {
    auto* opt = sub->add_option("--input,-i", input.paths, "Input JSON file ('-' for stdin)");
    if (!many) opt->expected(1);
    sub->add_option("--data", input.inline_data, "Inline JSON input");
    sub->add_flag("--json", json, "Emit canonical JSON");
    sub->add_option("--tol", tol, "Equality tolerance")->check(CLI::PositiveNumber);
  };

  auto* verify = app.add_subcommand("verify", "Membership test for N_k or M_k^0");
  std::string kind = "nk";
  verify->add_option("--kind", kind, "nk or mk0")->check(CLI::IsMember({"nk", "mk0"}));
  add_input(verify, true);

  auto* convert = app.add_subcommand("convert", "Rational map <-> D0/D1 Hilbert-scheme point");
  add_input(convert);
  auto* cover = app.add_subcommand("cover", "Map N_2n -> N_2n+1 through the D0 quotient");
  bool compare = false;
  cover->add_flag("--compare-recipes", compare, "Also report the literal p^2 mod zq numerator");
  add_input(cover);
  auto* fib = app.add_subcommand("fiber", "Enumerate the D1 preimages of a D0 point");
  add_input(fib);

  auto* sample = app.add_subcommand("sample", "Draw a seeded point of N_k");
  int k = 2;
  std::uint64_t seed = 0;
  sample->add_option("--k", k, "Charge")->required()->check(CLI::Range(2, 64));
  sample->add_option("--seed", seed, "Seed");
  sample->add_flag("--json", json, "Emit canonical JSON");

  auto* flow = app.add_subcommand("flow", "Integrate Nahm's equations from perturbed pole data");
  FlowOptions fo;
  flow->add_option("--k", fo.k, "Matrix size")->check(CLI::Range(2, 16));
  flow->add_option("--t0", fo.t0, "Start time");
  flow->add_option("--t1", fo.t1, "End time");
  flow->add_option("--seed", fo.seed, "Perturbation seed");
  flow->add_flag("--sigma-fixed", fo.sigma_fixed, "Perturb inside su(k)^sigma");
  flow->add_option("--perturbation", fo.perturbation, "Perturbation size");
  flow->add_option("--beta-exponent", fo.beta_exponent, "Compare t^e beta (1 for pure pole data)");
  flow->add_option("--rtol", fo.rtol, "Relative step tolerance")->check(CLI::PositiveNumber);
  flow->add_flag("--json", json, "Emit canonical JSON");

  auto* residues = app.add_subcommand("residues", "Principal residues, J and symmetric pairs");
  int rk = 2;
  residues->add_option("--k", rk, "Matrix size")->required()->check(CLI::Range(2, 64));
  residues->add_flag("--json", json, "Emit canonical JSON");

  auto* spectral = app.add_subcommand("spectral", "Spectral-curve section calculus");
  spectral->require_subcommand(1);
  auto* check_section = spectral->add_subcommand("check-section", "s(eta) s(-eta) = 1 mod P");
  add_input(check_section);
  auto* zero_section = spectral->add_subcommand("zero-section", "Values s(zeta, 0)");
  add_input(zero_section);
  auto* sbar = spectral->add_subcommand("sbar", "Section on eta P = 0");
  add_input(sbar);
  auto* rescale = spectral->add_subcommand("rescale", "eta -> eta / lambda");
  std::vector<double> lambda{2.0, 0.0};
  rescale->add_option("--lambda", lambda, "Factor as 're im' (default 2)")->expected(1, 2);
  add_input(rescale);

  Output o{out, err, false};
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kMalformed;
  }
  o.json = json;

  try {
    if (*verify) return cmd_verify(o, input, kind, tol, in);
    if (*sample) return cmd_sample(o, k, seed);
    if (*flow) return cmd_flow(o, fo);
    if (*residues) return cmd_residues(o, rk);
    const Json doc = load_single(input, in);
    if (*convert) return cmd_convert(o, doc);
    if (*cover) return cmd_cover(o, doc, compare);
    if (*fib) return cmd_fiber(o, doc);
    if (*check_section) return cmd_check_section(o, doc, tol);
    if (*zero_section) return cmd_zero_section(o, doc, tol);
    if (*sbar) return cmd_sbar(o, doc);
    if (*rescale) {
      const Complex l{lambda.at(0), lambda.size() > 1 ? lambda[1] : 0.0};
      return cmd_rescale(o, doc, l);
    }
  } catch (const InputError& e) {
    return report_error(o, e.code, e.message, e.context, kMalformed);
  } catch (const Error& e) {
    const int code = e.code() == ErrorCode::kMalformedInput ? kMalformed : kDomain;
    return report_error(o, to_string(e.code()), e.what(), e.context(), code);
  }
  return kMalformed;
}

}  // namespace nk::cli
