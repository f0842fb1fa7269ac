#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "hyperseries/hyperseries.hpp"

namespace hyperseries::cli {

namespace {

struct Globals {
  double tol = 1e-14;
  long long max_terms = 10000;
  std::string format = "json";
  unsigned seed = 20261016;

  TruncationPolicy policy() const {
    TruncationPolicy p;
    p.rel_tol = tol;
    p.max_terms = max_terms;
    p.validate();
    return p;
  }
};

struct ComplexFlag {
  std::string name;
  double re = 0.0;
  double im = 0.0;
  ComplexScalar value() const { return {re, im}; }
};

void add_complex(CLI::App* app, ComplexFlag& flag, const std::string& help) {
  app->add_option("--" + flag.name + ",--" + flag.name + "-re", flag.re, help + " (real part)")->capture_default_str();
  app->add_option("--" + flag.name + "-im", flag.im, help + " (imaginary part)")->capture_default_str();
}

void record_complex(OutputRecord& r, const ComplexFlag& flag) {
  r.inputs.emplace_back(flag.name + "-re", format_number(flag.re));
  r.inputs.emplace_back(flag.name + "-im", format_number(flag.im));
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  if (text.empty()) return values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw NumericError(ErrorCode::InvalidArgument, "--" + flag + ": cannot parse '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

std::string join_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

// Comma-separated real parts with optional imaginary parts of equal length.
struct ParamList {
  std::string name;
  std::string re;
  std::string im;

  std::vector<ComplexScalar> values() const {
    const auto r = parse_list(re, name);
    const auto i = parse_list(im, name + "-im");
    if (!i.empty() && i.size() != r.size()) {
      throw NumericError(ErrorCode::InvalidArgument, "--" + name + "-im must match --" + name + " in length");
    }
    std::vector<ComplexScalar> out;
    for (std::size_t k = 0; k < r.size(); ++k) out.emplace_back(r[k], i.empty() ? 0.0 : i[k]);
    return out;
  }

  void record(OutputRecord& rec) const {
    rec.inputs.emplace_back(name, join_list(parse_list(re, name)));
    rec.inputs.emplace_back(name + "-im", join_list(parse_list(im, name + "-im")));
  }
};

void add_list(CLI::App* app, ParamList& list, const std::string& help) {
  app->add_option("--" + list.name, list.re, help + ", comma separated real parts");
  app->add_option("--" + list.name + "-im", list.im, help + ", comma separated imaginary parts");
}

void set_value(OutputRecord& r, ComplexScalar v, double error, long long terms, bool converged) {
  r.value_re = v.real();
  r.value_im = v.imag();
  r.error_estimate = error;
  r.terms_used = terms;
  r.converged = converged;
}

// Runs fn; a NotConverged result is recorded from its partial sum.
void evaluate(OutputRecord& r, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const NotConverged& e) {
    set_value(r, e.partial().value, e.partial().error_estimate, e.partial().terms_used, false);
    r.warnings.emplace_back(e.what());
  }
}

// Flags shared by the integrand commands.
struct SpecFlags {
  std::string kernel = "exp";
  ComplexFlag alpha{"alpha", 0.0, 0.0};
  ComplexFlag beta{"beta", 1.0, 0.0};
  ComplexFlag eta{"eta", 1.0, 0.0};
  ComplexFlag lambda{"lambda", 0.0, 0.0};
  ComplexFlag gamma{"gamma", 1.0, 0.0};
  ParamList p{"p-params", "", ""};
  ParamList q{"q-params", "", ""};

  void add(CLI::App* app) {
    app->add_option("--kernel", kernel, "exp, cosh, sinh, cos or sin")->capture_default_str();
    add_complex(app, alpha, "power alpha");
    add_complex(app, beta, "kernel power beta");
    add_complex(app, eta, "kernel scale eta");
    add_complex(app, lambda, "pFq scale lambda");
    add_complex(app, gamma, "pFq power gamma");
    add_list(app, p, "upper pFq parameters");
    add_list(app, q, "lower pFq parameters");
  }

  IntegrandSpec spec() const {
    IntegrandSpec s;
    s.kernel = parse_kernel(kernel);
    s.alpha = alpha.value();
    s.beta = beta.value();
    s.eta = eta.value();
    s.lambda = lambda.value();
    s.gamma = gamma.value();
    s.pfq = {p.values(), q.values()};
    s.validate();
    return s;
  }

  void record(OutputRecord& r) const {
    r.inputs.emplace_back("kernel", kernel);
    for (const auto* f : {&alpha, &beta, &eta, &lambda, &gamma}) record_complex(r, *f);
    p.record(r);
    q.record(r);
  }
};

void apply_antiderivative(OutputRecord& r, const AntiderivativeValue& v) {
  set_value(r, v.value, v.error_estimate, v.outer_terms_used, v.converged);
  r.warnings.insert(r.warnings.end(), v.warnings.begin(), v.warnings.end());
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_warnings(const std::vector<std::string>& warnings) {
  std::string out;
  for (std::size_t i = 0; i < warnings.size(); ++i) out += (i > 0 ? "; " : "") + warnings[i];
  return out;
}

std::string csv_fields(const OutputRecord& r) {
  return format_number(r.value_re) + "," + format_number(r.value_im) + "," + format_number(r.error_estimate) + "," +
         std::to_string(r.terms_used) + "," + (r.converged ? "true" : "false") + "," +
         csv_escape(join_warnings(r.warnings));
}

constexpr const char* kCsvColumns = "value_re,value_im,error_estimate,terms_used,converged,warnings";

struct Outcome {
  std::vector<OutputRecord> records;
  std::string sweep_param;
  std::vector<double> grid;
  OutputRecord sweep_header;
  std::string format = "json";
  bool is_sweep = false;
  bool help = false;
  std::string help_text;
};

Outcome execute(const std::vector<std::string>& args, Globals globals);

void build_and_run(const std::vector<std::string>& args, Globals& g, Outcome& outcome) {
  CLI::App app{"Generalized hypergeometric series, antiderivatives and transforms"};
  app.require_subcommand(1);
  app.add_option("--tol", g.tol, "relative truncation tolerance")->capture_default_str();
  app.add_option("--max-terms", g.max_terms, "series term budget")->capture_default_str();
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();

  OutputRecord r;
  std::function<void()> action;

  // pfq
  auto* pfq_cmd = app.add_subcommand("pfq", "generalized hypergeometric series")->fallthrough();
  ParamList pfq_p{"p-params", "", ""};
  ParamList pfq_q{"q-params", "", ""};
  ComplexFlag pfq_z{"z", 0.0, 0.0};
  std::string pfq_mode = "convergent";
  add_list(pfq_cmd, pfq_p, "upper parameters");
  add_list(pfq_cmd, pfq_q, "lower parameters");
  add_complex(pfq_cmd, pfq_z, "argument");
  pfq_cmd->add_option("--mode", pfq_mode, "convergent or asymptotic (1F1 and 2F0 only)")
      ->check(CLI::IsMember({"convergent", "asymptotic"}))
      ->capture_default_str();
  pfq_cmd->callback([&] {
    action = [&] {
      r.command = "pfq";
      pfq_p.record(r);
      pfq_q.record(r);
      record_complex(r, pfq_z);
      r.inputs.emplace_back("mode", pfq_mode);
      const PFqParams params{pfq_p.values(), pfq_q.values()};
      const TruncationPolicy policy = g.policy();
      evaluate(r, [&] {
        SeriesEvaluation s;
        if (pfq_mode == "convergent") {
          s = pfq(params, pfq_z.value(), policy);
        } else if (params.p() == 1 && params.q() == 1) {
          s = pfq_1f1_asymptotic(params.upper[0], params.lower[0], pfq_z.value());
        } else if (params.p() == 2 && params.q() == 0) {
          s = two_f_zero_asymptotic(params.upper[0], params.upper[1], pfq_z.value(), policy);
        } else {
          throw NumericError(ErrorCode::InvalidArgument, "asymptotic mode supports 1F1 and 2F0 only");
        }
        set_value(r, s.value, s.error_estimate, s.terms_used, s.converged);
        if (s.mode == SeriesMode::asymptotic) r.warnings.emplace_back("asymptotic: error_estimate is the first omitted term");
      });
    };
  });

  // antideriv
  auto* anti_cmd = app.add_subcommand("antideriv", "series antiderivative with zero integration constant")->fallthrough();
  SpecFlags anti_spec;
  ComplexFlag anti_x{"x", 1.0, 0.0};
  anti_spec.add(anti_cmd);
  add_complex(anti_cmd, anti_x, "evaluation point");
  anti_cmd->callback([&] {
    action = [&] {
      r.command = "antideriv";
      anti_spec.record(r);
      record_complex(r, anti_x);
      const IntegrandSpec spec = anti_spec.spec();
      const TruncationPolicy policy = g.policy();
      evaluate(r, [&] { apply_antiderivative(r, antiderivative(spec, anti_x.value(), policy)); });
    };
  });

  // definite
  auto* def_cmd = app.add_subcommand("definite", "definite integral from the antiderivative")->fallthrough();
  SpecFlags def_spec;
  double def_a = 0.0;
  double def_b = 1.0;
  def_spec.add(def_cmd);
  def_cmd->add_option("--a", def_a, "lower limit")->capture_default_str();
  def_cmd->add_option("--b", def_b, "upper limit")->capture_default_str();
  def_cmd->callback([&] {
    action = [&] {
      r.command = "definite";
      def_spec.record(r);
      r.inputs.emplace_back("a", format_number(def_a));
      r.inputs.emplace_back("b", format_number(def_b));
      const IntegrandSpec spec = def_spec.spec();
      const TruncationPolicy policy = g.policy();
      evaluate(r, [&] { apply_antiderivative(r, definite_integral(spec, def_a, def_b, policy)); });
    };
  });

  // identity-check
  auto* id_cmd = app.add_subcommand("identity-check", "residual of the product lemma or a kernel identity")->fallthrough();
  SpecFlags id_spec;
  std::string id_name = "lemma1";
  ComplexFlag id_x{"x", 1.0, 0.0};
  long long id_n = 0;
  long long id_j = 0;
  int id_random = 0;
  id_spec.add(id_cmd);
  add_complex(id_cmd, id_x, "evaluation point");
  id_cmd->add_option("--id", id_name, "lemma1, t1 .. t6")->capture_default_str();
  id_cmd->add_option("--n", id_n, "lemma index n")->capture_default_str();
  id_cmd->add_option("--j", id_j, "lemma index j")->capture_default_str();
  id_cmd->add_option("--random", id_random, "lemma1 only: number of random cases drawn with --seed")
      ->capture_default_str();
  id_cmd->callback([&] {
    action = [&] {
      r.command = "identity-check";
      r.inputs.emplace_back("id", id_name);
      const IdentityId id = parse_identity(id_name);
      if (id_random > 0) {
        if (id != IdentityId::Lemma1) throw NumericError(ErrorCode::InvalidArgument, "--random applies to lemma1");
        r.inputs.emplace_back("random", std::to_string(id_random));
        r.inputs.emplace_back("seed", std::to_string(g.seed));
        std::mt19937 rng(g.seed);
        std::uniform_real_distribution<double> real(-3.0, 3.0);
        std::uniform_int_distribution<int> n_dist(0, 25);
        std::uniform_int_distribution<int> j_dist(0, 12);
        double worst = 0.0;
        long long checked = 0;
        for (int i = 0; i < id_random; ++i) {
          const ComplexScalar alpha(real(rng), real(rng));
          const ComplexScalar beta(real(rng), real(rng));
          ComplexScalar gamma(real(rng), real(rng));
          if (std::abs(gamma) < 0.1) gamma += 0.5;
          const int n = n_dist(rng);
          const int j = j_dist(rng);
          try {
            worst = std::max(worst, lemma1_residual(alpha, beta, gamma, n, j));
            ++checked;
          } catch (const NumericError& e) {
            if (e.code() != ErrorCode::PochhammerPole) throw;
          }
        }
        set_value(r, worst, 0.0, checked, true);
        if (checked < id_random) {
          r.warnings.push_back("skipped " + std::to_string(id_random - checked) + " cases at Pochhammer poles");
        }
        return;
      }
      id_spec.record(r);
      record_complex(r, id_x);
      r.inputs.emplace_back("n", std::to_string(id_n));
      r.inputs.emplace_back("j", std::to_string(id_j));
      IdentityCase c;
      c.identity_id = id;
      c.spec = id_spec.spec();
      c.x = id_x.value();
      c.n = id_n;
      c.j = id_j;
      const TruncationPolicy policy = g.policy();
      evaluate(r, [&] { set_value(r, theorem_residual(c, policy), 0.0, 0, true); });
    };
  });

  // fourier
  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier integral of x^alpha exp(-theta^2 x^2)")->fallthrough();
  double f_theta = 1.0;
  double f_k = 0.0;
  std::optional<double> f_alpha;
  fourier_cmd->add_option("--theta", f_theta, "Gaussian width")->capture_default_str();
  fourier_cmd->add_option("--k", f_k, "wavenumber")->capture_default_str();
  fourier_cmd->add_option("--alpha", f_alpha, "integer moment; omitted for the plain Gaussian");
  fourier_cmd->callback([&] {
    action = [&] {
      r.command = "fourier";
      r.inputs.emplace_back("theta", format_number(f_theta));
      r.inputs.emplace_back("k", format_number(f_k));
      if (f_alpha) {
        r.inputs.emplace_back("alpha", format_number(*f_alpha));
        const TruncationPolicy policy = g.policy();
        evaluate(r, [&] { set_value(r, fourier_moment_gaussian(*f_alpha, f_theta, f_k, policy), 0.0, 0, true); });
      } else {
        set_value(r, fourier_gaussian(f_theta, f_k), 0.0, 0, true);
      }
    };
  });

  // laplace
  auto* laplace_cmd = app.add_subcommand("laplace", "Laplace integral of x^alpha exp(-theta^2 x^2)")->fallthrough();
  double l_alpha = 0.0;
  double l_theta = 1.0;
  ComplexFlag l_u{"u", 10.0, 0.0};
  bool l_erf = false;
  laplace_cmd->add_option("--alpha", l_alpha, "power, > -1")->capture_default_str();
  laplace_cmd->add_option("--theta", l_theta, "Gaussian width")->capture_default_str();
  add_complex(laplace_cmd, l_u, "transform variable");
  laplace_cmd->add_flag("--erf", l_erf, "transform of int_0^x exp(-v^2) dv instead");
  laplace_cmd->callback([&] {
    action = [&] {
      r.command = "laplace";
      record_complex(r, l_u);
      const TruncationPolicy policy = g.policy();
      SeriesEvaluation s;
      if (l_erf) {
        r.inputs.emplace_back("erf", "true");
        s = laplace_erf(l_u.value(), policy);
      } else {
        r.inputs.emplace_back("alpha", format_number(l_alpha));
        r.inputs.emplace_back("theta", format_number(l_theta));
        s = laplace_moment_gaussian(l_alpha, l_theta, l_u.value(), policy);
      }
      set_value(r, s.value, s.error_estimate, s.terms_used, s.converged);
      r.warnings.emplace_back("asymptotic: error_estimate is the first omitted term");
    };
  });

  // airy
  auto* airy_cmd = app.add_subcommand("airy", "Airy function Ai")->fallthrough();
  ComplexFlag a_z{"z", 0.0, 0.0};
  std::string a_method = "series";
  double a_quad_tol = 1e-12;
  add_complex(airy_cmd, a_z, "argument");
  airy_cmd->add_option("--method", a_method, "series or quadrature")
      ->check(CLI::IsMember({"series", "quadrature"}))
      ->capture_default_str();
  airy_cmd->add_option("--quad-tol", a_quad_tol, "quadrature tolerance")->capture_default_str();
  airy_cmd->callback([&] {
    action = [&] {
      r.command = "airy";
      record_complex(r, a_z);
      r.inputs.emplace_back("method", a_method);
      if (a_method == "series") {
        const TruncationPolicy policy = g.policy();
        evaluate(r, [&] {
          const auto s = airy_ai(a_z.value(), policy);
          set_value(r, s.value, s.error_estimate, s.terms_used, s.converged);
        });
      } else {
        r.inputs.emplace_back("quad-tol", format_number(a_quad_tol));
        const auto q = oracle::airy_ai_integral<double>(a_z.value(), a_quad_tol);
        set_value(r, q.value, q.error_estimate, q.evaluations, q.converged);
      }
    };
  });

  // os-solve
  auto* os_cmd = app.add_subcommand("os-solve", "Orr-Sommerfeld solution for plane Couette flow")->fallthrough();
  OSParams os;
  double os_y = 0.5;
  ComplexFlag os_omega{"omega", os.omega.real(), os.omega.imag()};
  std::string os_method = "quadrature";
  double os_quad_tol = 1e-10;
  os_cmd->add_option("--y", os_y, "wall-normal coordinate, >= 0")->capture_default_str();
  os_cmd->add_option("--k", os.k, "wavenumber")->capture_default_str();
  os_cmd->add_option("--r", os.r, "aspect ratio")->capture_default_str();
  os_cmd->add_option("--re", os.Re, "Reynolds number")->capture_default_str();
  add_complex(os_cmd, os_omega, "wave frequency");
  os_cmd->add_option("--method", os_method, "quadrature or series")
      ->check(CLI::IsMember({"quadrature", "series"}))
      ->capture_default_str();
  os_cmd->add_option("--quad-tol", os_quad_tol, "quadrature tolerance")->capture_default_str();
  os_cmd->callback([&] {
    action = [&] {
      r.command = "os-solve";
      r.inputs.emplace_back("y", format_number(os_y));
      r.inputs.emplace_back("k", format_number(os.k));
      r.inputs.emplace_back("r", format_number(os.r));
      r.inputs.emplace_back("re", format_number(os.Re));
      record_complex(r, os_omega);
      r.inputs.emplace_back("method", os_method);
      os.omega = os_omega.value();
      r.inputs.emplace_back("quad-tol", format_number(os_quad_tol));
      const TruncationPolicy policy = g.policy();
      evaluate(r, [&] {
        const OSSolution sol = os_method == "quadrature" ? phi_quadrature(os_y, os, os_quad_tol) : phi_series(os_y, os, policy);
        set_value(r, sol.phi, sol.error_estimate, sol.terms_used, sol.converged);
        r.warnings.insert(r.warnings.end(), sol.warnings.begin(), sol.warnings.end());
      });
      if (!r.converged && os_method == "series") r.warnings.emplace_back(kSeriesInterpretationFlag);
    };
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate another command over a uniform grid");
  std::string s_command;
  std::string s_param;
  double s_from = 0.0;
  double s_to = 1.0;
  int s_steps = 10;
  sweep_cmd->add_option("--command", s_command, "command to evaluate")->required();
  sweep_cmd->add_option("--param", s_param, "flag to vary, without dashes")->required();
  sweep_cmd->add_option("--from", s_from, "first grid value")->capture_default_str();
  sweep_cmd->add_option("--to", s_to, "last grid value")->capture_default_str();
  sweep_cmd->add_option("--steps", s_steps, "number of intervals")->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->allow_extras();
  sweep_cmd->callback([&] {
    action = [&] {
      if (s_command == "sweep") throw NumericError(ErrorCode::InvalidArgument, "sweep cannot nest");
      std::vector<std::string> rest = sweep_cmd->remaining();
      const std::string flag = "--" + s_param;
      // Flags after the sweep options, including global ones, apply to every row.
      if (std::find(rest.begin(), rest.end(), flag) != rest.end()) {
        throw NumericError(ErrorCode::InvalidArgument, "sweep: " + flag + " is set by the grid");
      }
      outcome.is_sweep = true;
      outcome.sweep_param = s_param;
      outcome.sweep_header.command = "sweep";
      outcome.sweep_header.inputs = {{"command", s_command},      {"param", s_param},
                                     {"from", format_number(s_from)}, {"to", format_number(s_to)},
                                     {"steps", std::to_string(s_steps)}};
      for (int i = 0; i <= s_steps; ++i) {
        const double v = i == s_steps ? s_to : s_from + (s_to - s_from) * static_cast<double>(i) / s_steps;
        std::vector<std::string> row_args{s_command};
        row_args.insert(row_args.end(), rest.begin(), rest.end());
        row_args.push_back(flag);
        row_args.push_back(format_number(v));
        Outcome row = execute(row_args, g);
        if (row.records.size() != 1) throw NumericError(ErrorCode::InvalidArgument, "sweep: row produced no record");
        outcome.grid.push_back(v);
        outcome.format = row.format;
        outcome.records.push_back(std::move(row.records.front()));
      }
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.help = true;
    outcome.help_text = app.help();
    return;
  } catch (const CLI::CallForAllHelp&) {
    outcome.help = true;
    outcome.help_text = app.help("", CLI::AppFormatMode::All);
    return;
  }
  action();
  if (!outcome.is_sweep) {
    outcome.records.push_back(std::move(r));
    outcome.format = g.format;
  }
}

Outcome execute(const std::vector<std::string>& args, Globals globals) {
  Outcome outcome;
  build_and_run(args, globals, outcome);
  return outcome;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string to_json(const OutputRecord& r) {
  std::string out = "{\"command\":" + json_string(r.command) + ",\"inputs\":{";
  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    if (i > 0) out += ',';
    out += json_string(r.inputs[i].first) + ":" + json_string(r.inputs[i].second);
  }
  out += "},\"value_re\":" + format_number(r.value_re) + ",\"value_im\":" + format_number(r.value_im) +
         ",\"error_estimate\":" + format_number(r.error_estimate) + ",\"terms_used\":" + std::to_string(r.terms_used) +
         ",\"converged\":" + (r.converged ? "true" : "false") + ",\"warnings\":[";
  for (std::size_t i = 0; i < r.warnings.size(); ++i) {
    if (i > 0) out += ',';
    out += json_string(r.warnings[i]);
  }
  return out + "]}";
}

RunResult run(const std::vector<std::string>& args) {
  RunResult result;
  Globals globals;
  Outcome outcome;
  try {
    build_and_run(args, globals, outcome);
  } catch (const CLI::ParseError& e) {
    result.exit_code = kInputError;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  } catch (const NumericError& e) {
    result.exit_code = kInputError;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  }
  if (outcome.help) {
    result.out = outcome.help_text;
    return result;
  }

  const bool all_converged =
      std::all_of(outcome.records.begin(), outcome.records.end(), [](const OutputRecord& r) { return r.converged; });
  result.exit_code = all_converged ? kOk : kNotConverged;

  if (!outcome.is_sweep) {
    const OutputRecord& r = outcome.records.front();
    if (outcome.format == "csv") {
      result.out = std::string("command,") + kCsvColumns + "\n" + r.command + "," + csv_fields(r) + "\n";
    } else {
      result.out = to_json(r) + "\n";
    }
    return result;
  }

  if (outcome.format == "csv") {
    result.out = "index," + csv_escape(outcome.sweep_param) + "," + kCsvColumns + "\n";
    for (std::size_t i = 0; i < outcome.records.size(); ++i) {
      result.out += std::to_string(i) + "," + format_number(outcome.grid[i]) + "," + csv_fields(outcome.records[i]) + "\n";
    }
    return result;
  }
  const OutputRecord& h = outcome.sweep_header;
  std::string out = "{\"command\":\"sweep\",\"inputs\":{";
  for (std::size_t i = 0; i < h.inputs.size(); ++i) {
    if (i > 0) out += ',';
    out += json_string(h.inputs[i].first) + ":" + json_string(h.inputs[i].second);
  }
  out += "},\"rows\":[";
  for (std::size_t i = 0; i < outcome.records.size(); ++i) {
    if (i > 0) out += ',';
    out += "{\"index\":" + std::to_string(i) + ",\"grid\":" + format_number(outcome.grid[i]) +
           ",\"record\":" + to_json(outcome.records[i]) + "}";
  }
  result.out = out + "]}\n";
  return result;
}

}  // namespace hyperseries::cli
