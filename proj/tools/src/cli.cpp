#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rys/rys.hpp"

namespace rys::cli {

namespace {

double ten_to(long e) { return std::pow(10.0, static_cast<double>(e)); }

WeightParams weight_of(const RunConfig& cfg) {
  if (cfg.n < 1) throw DomainError("--n must be at least 1");
  return WeightParams(cfg.z, cfg.lambda, cfg.digits);
}

Document base_document(const RunConfig& cfg) {
  Document doc;
  doc.params = {{"command", cfg.command},
                {"z", cfg.z},
                {"lambda", cfg.lambda},
                {"n", static_cast<long long>(cfg.n)},
                {"digits", static_cast<long long>(cfg.digits)}};
  return doc;
}

void add_summary(Document& doc, std::string name, double value, std::optional<double> bound, bool pass) {
  doc.summary.push_back(SummaryEntry{std::move(name), value, bound, pass});
}

void add_bounded(Document& doc, std::string name, double value, double bound) {
  add_summary(doc, std::move(name), value, bound, value <= bound);
}

std::vector<double> chebyshev_points(std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t j = 0; j < count; ++j) {
    x[j] = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(count));
  }
  return x;
}

RecurrenceTable perturbed(const RecurrenceTable& rt, double eps) {
  std::vector<XReal> g = rt.gammas();
  const std::size_t k = std::max<std::size_t>(1, rt.N() / 2);
  g[k] *= 1 + XReal(eps, rt.params().precision());
  return RecurrenceTable(rt.params(), std::move(g), rt.norms());
}

// Table with norms rebuilt from s_0 for a coefficient sequence obtained by
// integration.
RecurrenceTable table_from_state(const FlowState& state, std::size_t N) {
  std::vector<XReal> g(state.gamma.begin(), state.gamma.begin() + static_cast<std::ptrdiff_t>(N + 1));
  std::vector<XReal> h{moment(state.params, 0)};
  for (std::size_t n = 1; n <= N; ++n) h.push_back(h.back() * g[n]);
  return RecurrenceTable(state.params, std::move(g), std::move(h));
}

double max_relative_deviation(const std::vector<XReal>& a, const RecurrenceTable& fresh, std::size_t N) {
  double worst = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    worst = std::max(worst, relative_difference(a[n], fresh.gamma(static_cast<std::ptrdiff_t>(n))));
  }
  return worst;
}

void write_output(const Document& doc, Format format, const std::string& path, std::ostream& out) {
  std::string text;
  switch (format) {
    case Format::json: text = to_json(doc); break;
    case Format::csv: text = to_csv(doc); break;
    case Format::text: text = to_text(doc); break;
  }
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + path);
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path);
}

}  // namespace

bool Document::passed() const {
  return std::all_of(summary.begin(), summary.end(), [](const SummaryEntry& e) { return e.pass; });
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

Document cmd_moments(const RunConfig& cfg) {
  const WeightParams w = weight_of(cfg);
  const MomentTable mt = moment_table(w, cfg.n + 2);
  Document doc = base_document(cfg);
  doc.columns = {"m", "s_m", "residual"};
  double worst = 0;
  for (std::size_t k = 0; k <= cfg.n; ++k) {
    const std::size_t m = 2 * k;
    const double r = moment_recurrence_residual(mt, m + 1);
    worst = std::max(worst, r);
    doc.rows.push_back({static_cast<long long>(m), mt.even(k).to_double(), r});
  }
  add_bounded(doc, "moment_recurrence", worst, ten_to(8 - static_cast<long>(cfg.digits)));
  return doc;
}

Document cmd_recurrence(const RunConfig& cfg) {
  const WeightParams w = weight_of(cfg);
  const std::size_t N = cfg.n;
  const RecurrenceTable rt = recurrence(w, N + 2);
  const GTable gt = g_table(rt);
  const long d = static_cast<long>(cfg.digits);

  Document doc = base_document(cfg);
  doc.columns = {"n", "gamma", "h", "lf_residual", "painleve_residual"};
  double lf = 0, pv = 0, geg = 0;
  for (std::size_t n = 0; n <= N; ++n) {
    std::vector<Cell> row{static_cast<long long>(n), rt.gamma(static_cast<std::ptrdiff_t>(n)).to_double(),
                          rt.h(n).to_double()};
    if (n == 0) {
      row.emplace_back();
      row.emplace_back();
    } else {
      const double a = laguerre_freud_residual(rt, n);
      const double b = painleve_residual(gt, n);
      lf = std::max(lf, a);
      pv = std::max(pv, b);
      row.emplace_back(a);
      row.emplace_back(b);
      if (w.gegenbauer_limit()) {
        geg = std::max(geg, relative_difference(rt.gamma(static_cast<std::ptrdiff_t>(n)), gegenbauer_gamma(w.lambda(), n)));
      }
    }
    doc.rows.push_back(std::move(row));
  }
  add_bounded(doc, "laguerre_freud", lf, ten_to(10 - d));
  add_bounded(doc, "painleve", pv, ten_to(10 - d));
  if (w.gegenbauer_limit()) add_bounded(doc, "gegenbauer_limit", geg, ten_to(10 - d));
  return doc;
}

Document cmd_quadrature(const RunConfig& cfg) {
  const WeightParams w = weight_of(cfg);
  const std::size_t N = cfg.n;
  const RecurrenceTable rt = recurrence(w, N);
  const QuadratureRule rule = gauss_rule(rt, N);
  const MomentTable mt = moment_table(w, N);

  Document doc = base_document(cfg);
  doc.columns = {"k", "node", "weight"};
  double total = 0, min_weight = rule.weights.front(), asym = 0;
  for (std::size_t k = 0; k < N; ++k) {
    doc.rows.push_back({static_cast<long long>(k + 1), rule.nodes[k], rule.weights[k]});
    total += rule.weights[k];
    min_weight = std::min(min_weight, rule.weights[k]);
    asym = std::max(asym, std::abs(rule.nodes[k] + rule.nodes[N - 1 - k]));
  }
  add_bounded(doc, "weight_sum", std::abs(total - mt.even(0).to_double()) / mt.even(0).to_double(), 1e-12);
  add_summary(doc, "min_weight", min_weight, 0.0, min_weight > 0);
  add_bounded(doc, "node_symmetry", asym, 1e-14);
  add_bounded(doc, "exactness", exactness_report(rule, mt), 1e-12);
  return doc;
}

Document cmd_zeros(const RunConfig& cfg) {
  const WeightParams w = weight_of(cfg);
  const std::size_t n = cfg.n;
  const RecurrenceTable rt = recurrence(w, n + 1);
  const ZeroSet zs = zeros(rt, n);

  Document doc = base_document(cfg);
  doc.columns = {"k", "x", "velocity"};
  std::vector<double> velocity;
  if (!w.gegenbauer_limit()) velocity = zero_velocities(rt, n);
  bool signs = true;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Cell> row{static_cast<long long>(k + 1), zs.zeros[k]};
    if (velocity.empty()) {
      row.emplace_back();
    } else {
      row.emplace_back(velocity[k]);
      signs = signs && (zs.zeros[k] == 0 ? velocity[k] == 0 : velocity[k] * zs.zeros[k] < 0);
    }
    doc.rows.push_back(std::move(row));
  }

  if (!w.gegenbauer_limit()) {
    const ZeroContext ctx = zero_context(rt, n);
    const double beta2 = ctx.beta2.to_double();
    // β_n >= 1 is a theorem for λ >= 1/2 only; report it unbounded otherwise.
    if (w.lambda_value() >= 0.5) {
      add_summary(doc, "beta", ctx.beta(), 1.0, beta2 >= 1);
    } else {
      add_summary(doc, "beta", beta2 >= 0 ? ctx.beta() : std::nan(""), std::nullopt, true);
    }
    add_bounded(doc, "beta_ladder_consistency", abs(ctx.ladder_r() - ladder_data(rt, n).R).to_double(), 1e-12);
    add_bounded(doc, "electrostatic_gradient", electrostatic_residual(zs, ctx), 1e-8);
    add_summary(doc, "velocity_sign", signs ? 1.0 : 0.0, std::nullopt, signs);
  }
  return doc;
}

Document cmd_flow(const RunConfig& cfg) {
  const WeightParams w = weight_of(cfg);
  const std::size_t N = cfg.n;
  if (cfg.steps < 1) throw DomainError("--steps must be at least 1");

  Document doc = base_document(cfg);
  doc.params.emplace_back("z0", cfg.z0);
  doc.params.emplace_back("z1", cfg.z1);
  doc.params.emplace_back("steps", static_cast<long long>(cfg.steps));

  const std::size_t checkpoints = cfg.z0 == cfg.z1 ? 1 : cfg.steps + 1;
  const std::size_t free_zeros = N / 2;
  doc.columns = {"z", "deviation"};
  for (std::size_t n = 1; n <= N; ++n) doc.columns.push_back("gamma_" + std::to_string(n));
  for (std::size_t k = 1; k <= free_zeros; ++k) doc.columns.push_back("x2_" + std::to_string(k));

  FlowState state = flow_state(w.with_z(cfg.z0), N);
  double previous_z = cfg.z0;
  double worst = 0;
  std::size_t violations = 0;
  std::vector<double> last_y;
  for (std::size_t i = 0; i < checkpoints; ++i) {
    const double z = i + 1 == checkpoints && checkpoints > 1
                         ? cfg.z1
                         : cfg.z0 + (cfg.z1 - cfg.z0) * static_cast<double>(i) / static_cast<double>(cfg.steps);
    if (i > 0) {
      const double dz = z - previous_z;
      const auto inner = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(dz) / 0.01)));
      state = toda_integrate(state, dz, inner);
    }
    previous_z = z;
    const double dev = max_relative_deviation(state.gamma, recurrence(state.params, N), N);
    worst = std::max(worst, dev);

    std::vector<Cell> row{z, dev};
    for (std::size_t n = 1; n <= N; ++n) row.emplace_back(state.gamma[n].to_double());
    const ZeroSet zs = zeros(table_from_state(state, N), N);
    std::vector<double> y;
    for (std::size_t k = 0; k < free_zeros; ++k) {
      const double x = zs.zeros[N - free_zeros + k];
      y.push_back(x * x);
      row.emplace_back(x * x);
    }
    if (!last_y.empty()) {
      for (std::size_t k = 0; k < y.size(); ++k) {
        const bool decreasing = cfg.z1 > cfg.z0 ? y[k] < last_y[k] : y[k] > last_y[k];
        if (!decreasing) ++violations;
      }
    }
    last_y = std::move(y);
    doc.rows.push_back(std::move(row));
  }
  add_bounded(doc, "fresh_pipeline_deviation", worst, 1e-8);
  add_summary(doc, "x2_monotonicity_violations", static_cast<double>(violations), 0.0, violations == 0);
  return doc;
}

Document cmd_verify(const RunConfig& cfg) {
  const WeightParams w = weight_of(cfg);
  const std::size_t N = std::max<std::size_t>(cfg.n, 4);
  const long d = static_cast<long>(cfg.digits);
  const bool has_z = !w.gegenbauer_limit();

  Document doc = base_document(cfg);
  if (cfg.perturbation) doc.params.emplace_back("perturbation", *cfg.perturbation);
  doc.columns = {"check", "value", "bound", "status"};

  const MomentTable mt = moment_table(w, std::max<std::size_t>(N + 2, 32));
  RecurrenceTable rt = recurrence(w, N + 2);
  if (cfg.perturbation) rt = perturbed(rt, *cfg.perturbation);

  auto check = [&](std::string name, double value, double bound) { add_bounded(doc, std::move(name), value, bound); };

  {
    double r = 0;
    for (std::size_t n = 1; n + 3 <= 2 * (N + 2); n += 2) r = std::max(r, moment_recurrence_residual(mt, n));
    check("moment_recurrence", r, ten_to(8 - d));
    const std::size_t M = std::min<std::size_t>(N, 20);
    const MomentTable oracle = moment_oracle_table(w, M);
    double agree = 0;
    for (std::size_t k = 0; k <= M; ++k) agree = std::max(agree, relative_difference(oracle.even(k), mt.even(k)));
    check("moment_oracle", agree, ten_to(-std::min<long>(d / 2, 25)));
  }
  {
    double lf = 0, pv = 0;
    const GTable gt = g_table(rt);
    for (std::size_t n = 1; n <= N; ++n) {
      lf = std::max(lf, laguerre_freud_residual(rt, n));
      pv = std::max(pv, painleve_residual(gt, n));
    }
    check("laguerre_freud", lf, ten_to(10 - d));
    check("painleve", pv, ten_to(10 - d));
  }
  {
    double st = 0, la = 0, ho = 0;
    const std::size_t top = std::min<std::size_t>(15, N);
    for (double x : chebyshev_points(21)) {
      for (std::size_t n = 0; n <= top; ++n) {
        st = std::max(st, structure_residual(rt, n, x));
        la = std::max(la, ladder_residual(rt, n, x));
        if (n >= 1) ho = std::max(ho, holonomic_residual(rt, n, x));
      }
    }
    check("structure", st, ten_to(8 - d));
    check("ladder", la, ten_to(8 - d));
    check("holonomic", ho, ten_to(6 - d));
  }
  {
    const std::size_t top = std::min<std::size_t>(N, 40);
    const MomentTable qm = moment_table(w, top);
    double worst = 0;
    for (std::size_t k = 1; k <= top; ++k) worst = std::max(worst, exactness_report(gauss_rule(rt, k), qm));
    check("quadrature_exactness", worst, 1e-12);
  }
  {
    const std::size_t window = std::min<std::size_t>(N, 10);
    FlowState start = flow_state(w, window);
    if (cfg.perturbation) start.gamma[std::max<std::size_t>(1, window / 2)] *= 1 + XReal(*cfg.perturbation, w.precision());
    const FlowState end = toda_integrate(start, 0.5, 50);
    check("toda_flow", max_relative_deviation(end.gamma, recurrence(end.params, window), window), 1e-8);

    double hf = 0;
    for (std::size_t n = 1; n <= N; ++n) hf = std::max(hf, h_flow_residual(rt, n));
    check("h_flow", hf, ten_to(10 - d));
    if (has_z) {
      FlowState fs{w, rt.gammas()};
      double ch = 0;
      for (std::size_t n = 2; n <= N; ++n) ch = std::max(ch, chazy_residual(fs, n));
      check("chazy", ch, ten_to(8 - d));
    }
  }
  {
    const StieltjesOdeCheck t = stieltjes_ode_residual_t(mt, 3.0, 15);
    check("stieltjes_t", t.excess, ten_to(5 - d));
    const StieltjesZCheck zc = stieltjes_ode_residual_z(mt, 3.0, 15);
    check("stieltjes_z", zc.excess, ten_to(5 - d));
  }
  if (has_z) {
    double worst = 0;
    for (std::size_t m = 1; m <= std::min<std::size_t>(N, 20); ++m) {
      worst = std::max(worst, electrostatic_residual(zeros(rt, m), zero_context(rt, m)));
    }
    check("electrostatics", worst, 1e-8);
  }

  for (const auto& e : doc.summary) {
    doc.rows.push_back({e.name, *e.value, *e.bound, std::string(e.pass ? "pass" : "FAIL")});
  }
  return doc;
}

std::string to_json(const Document& doc) {
  auto cell = [](const Cell& c) -> nlohmann::ordered_json {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return nullptr;
          } else if constexpr (std::is_same_v<T, double>) {
            if (!std::isfinite(v)) return nullptr;
            return v;
          } else {
            return v;
          }
        },
        c);
  };
  nlohmann::ordered_json j;
  for (const auto& [k, v] : doc.params) j["params"][k] = cell(v);
  j["columns"] = doc.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell(c));
    j["rows"].push_back(std::move(r));
  }
  j["residual_summary"] = nlohmann::ordered_json::object();
  for (const auto& e : doc.summary) {
    nlohmann::ordered_json s;
    s["value"] = e.value && std::isfinite(*e.value) ? nlohmann::ordered_json(*e.value) : nlohmann::ordered_json(nullptr);
    s["bound"] = e.bound ? nlohmann::ordered_json(*e.bound) : nlohmann::ordered_json(nullptr);
    s["pass"] = e.pass;
    j["residual_summary"][e.name] = std::move(s);
  }
  return j.dump(2) + "\n";
}

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string to_csv(const Document& doc) {
  std::ostringstream os;
  for (std::size_t i = 0; i < doc.columns.size(); ++i) os << (i ? "," : "") << doc.columns[i];
  os << "\n";
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << "\n";
  }
  return os.str();
}

std::string to_text(const Document& doc) {
  std::vector<std::size_t> width(doc.columns.size());
  for (std::size_t i = 0; i < doc.columns.size(); ++i) width[i] = doc.columns[i].size();
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], cell_text(row[i]).size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(width[i]) + 2) << cells[i];
    }
    os << "\n";
  };
  line(doc.columns);
  for (const auto& row : doc.rows) {
    std::vector<std::string> cells;
    for (const auto& c : row) cells.push_back(cell_text(c));
    line(cells);
  }
  os << (doc.passed() ? "all checks passed" : "verification FAILED") << "\n";
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("RYS_DIGITS")) {
    unsigned value = 0;
    const std::string_view text(env);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      err << "error: RYS_DIGITS must be a positive integer, got '" << env << "'\n";
      return 2;
    }
    cfg.digits = value;
  }

  CLI::App app{"Orthogonal polynomials for (1 - x^2)^(lambda - 1/2) exp(-z x^2): tables and identity checks", "rys"};
  app.require_subcommand(1);
  std::string format_name;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--z", cfg.z, "exponential rate z >= 0")->check(CLI::Number);
    sub->add_option("--lambda", cfg.lambda, "parameter lambda > -1/2")->check(CLI::Number);
    sub->add_option("--n", cfg.n, "degree / table size N >= 1");
    sub->add_option("--digits", cfg.digits, "working precision in decimal digits (>= 30)");
    sub->add_option("--format", format_name, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  struct Entry {
    const char* name;
    const char* help;
    Document (*fn)(const RunConfig&);
  };
  const std::array<Entry, 6> entries{{
      {"moments", "even moments with recurrence residuals", cmd_moments},
      {"recurrence", "recurrence coefficients, norms and identity residuals", cmd_recurrence},
      {"quadrature", "Gauss rule nodes and weights", cmd_quadrature},
      {"zeros", "zeros of P_n, electrostatics and zero velocities", cmd_zeros},
      {"flow", "Toda flow trajectory over [z0, z1]", cmd_flow},
      {"verify", "run the full residual suite", cmd_verify},
  }};
  std::vector<CLI::App*> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    common(sub);
    subs.push_back(sub);
  }
  subs[4]->add_option("--z0", cfg.z0, "start of the z range");
  subs[4]->add_option("--z1", cfg.z1, "end of the z range");
  subs[4]->add_option("--steps", cfg.steps, "number of checkpoint intervals");
  double perturbation = 0;
  auto* inject = subs[5]->add_option("--inject-perturbation", perturbation,
                                     "multiply one gamma by (1 + eps) before checking (test hook)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::size_t chosen = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) chosen = i;
  }
  cfg.command = entries[chosen].name;
  if (inject->count() > 0) cfg.perturbation = perturbation;
  if (!format_name.empty()) {
    cfg.format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::text;
  }
  const Format format = cfg.format.value_or(cfg.command == "verify" ? Format::text : Format::json);

  try {
    const Document doc = entries[chosen].fn(cfg);
    if (cfg.command == "recurrence" && cfg.n + 20 > cfg.digits) {
      err << "warning: N = " << cfg.n << " exceeds the d - 20 budget for " << cfg.digits << " digits\n";
    }
    write_output(doc, format, cfg.out, out);
    if (!doc.passed()) {
      for (const auto& e : doc.summary) {
        if (!e.pass) err << "check failed: " << e.name << "\n";
      }
      return 1;
    }
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rys::cli
