#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "benford/chain_io.hpp"
#include "benford/chains.hpp"
#include "benford/conformance.hpp"
#include "benford/errors.hpp"
#include "benford/montecarlo.hpp"

namespace benford::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kToolVersion = "1.0.0";
constexpr double kDensityGridSpan = 1e-3;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  std::string chain_path;
  double a = 0.0;
  double b = 1.0;
  long lmax = 64;
  int n = 0;
  int base = 10;
  double k = 1.0;
  double s = 1.0;
  int points = 200;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  unsigned workers = 1;
  std::string mode = "chain";
  std::string out_path;
  std::string input_path;
  std::string column;
  std::size_t col_index = 0;
  bool no_header = false;
  std::optional<double> bound;
  std::size_t grid = kDefaultGridSize;
};

json base_config(std::string_view command) {
  return {{"command", command}, {"version", kToolVersion}};
}

void require_finite(double v, std::string_view what) {
  if (!std::isfinite(v)) throw NonConvergence(std::string(what) + " is not finite");
}

void print_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

int cmd_bound(const Options& o, std::ostream& out) {
  const ChainSpec chain = load_chain_spec(o.chain_path);
  const BoundResult r = deviation_bound(chain, FoldInterval::make(o.a, o.b), o.lmax);
  if (!std::isfinite(r.tail)) {
    throw NonConvergence("majorant tail is not summable for this chain (e.g. a lone uniform link)");
  }
  json config = base_config("bound");
  config.update({{"chain_path", o.chain_path}, {"chain", chain_to_json(chain)},
                 {"a", o.a}, {"b", o.b}, {"lmax", o.lmax}});
  json terms = json::array();
  for (const auto& t : r.per_term) terms.push_back({{"l", t.l}, {"modulus", t.modulus}});
  print_json(out, {{"config", config},
                   {"value", r.value},
                   {"truncation_L", r.truncation_L},
                   {"interval_length", r.interval_length},
                   {"tail", r.tail},
                   {"per_term", terms}});
  return kExitOk;
}

int cmd_bound_exp(const Options& o, std::ostream& out) {
  const double value = exponential_chain_bound(o.n, o.base);
  json config = base_config("bound-exp");
  config.update({{"n", o.n}, {"base", o.base}});
  print_json(out, {{"config", config},
                   {"value", value},
                   {"convention", "one-sided sum over l >= 1"},
                   {"envelope", std::pow(0.057, o.n)},
                   {"envelope_applies", o.base == 10}});
  return kExitOk;
}

int cmd_bound_uniform(const Options& o, std::ostream& out) {
  const UniformBoundTerms t = uniform_chain_cdf_terms(o.n, o.k, o.s);
  json config = base_config("bound-uniform");
  config.update({{"n", o.n}, {"k", o.k}, {"s", o.s}, {"base", 10}});
  print_json(out, {{"config", config},
                   {"value", t.value()},
                   {"density_term", t.density_term},
                   {"first_harmonic_term", t.first_harmonic_term},
                   {"higher_harmonics_term", t.higher_term}});
  return kExitOk;
}

int cmd_fold(const Options& o, std::ostream& out) {
  const ChainSpec chain = load_chain_spec(o.chain_path);
  const FoldResult r = fold_probability(chain, FoldInterval::make(o.a, o.b), o.lmax);
  require_finite(r.truncation_error, "truncation error");
  json config = base_config("fold");
  config.update({{"chain_path", o.chain_path}, {"chain", chain_to_json(chain)},
                 {"a", o.a}, {"b", o.b}, {"lmax", o.lmax}});
  print_json(out, {{"config", config},
                   {"probability", r.probability},
                   {"truncation_error", r.truncation_error}});
  return kExitOk;
}

int cmd_digits(const Options& o, std::ostream& out) {
  const ChainSpec chain = load_chain_spec(o.chain_path);
  const auto probabilities = first_digit_probabilities(chain, o.lmax);
  json config = base_config("digits");
  config.update({{"chain_path", o.chain_path}, {"chain", chain_to_json(chain)}, {"lmax", o.lmax}});
  out << "# config: " << config.dump() << '\n';
  out << "d,probability,benford,delta\n";
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const int d = static_cast<int>(i) + 1;
    const double p = probabilities[i];
    const double benford = benford_digit_prob(d, chain.base());
    out << d << ',' << g17(p) << ',' << g17(benford) << ',' << g17(p - benford) << '\n';
  }
  return kExitOk;
}

int cmd_density_uniform(const Options& o, std::ostream& out) {
  if (o.points < 2) throw InputError("--points must be >= 2");
  json config = base_config("density-uniform");
  config.update({{"n", o.n}, {"k", o.k}, {"points", o.points},
                 {"grid", "geometric"}, {"x_min", o.k * kDensityGridSpan}, {"x_max", o.k}});
  std::string body;
  for (int j = 0; j < o.points; ++j) {
    const double x = j + 1 == o.points
                         ? o.k
                         : o.k * std::pow(kDensityGridSpan, 1.0 - static_cast<double>(j) / (o.points - 1));
    body += g17(x) + ',' + g17(uniform_chain_density(o.n, o.k, x)) + '\n';
  }
  out << "# config: " << config.dump() << '\n' << "x,f\n" << body;
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const ChainSpec chain = load_chain_spec(o.chain_path);
  if (o.samples == 0) throw InputError("--samples must be positive");
  SamplerKind kind;
  if (o.mode == "chain") {
    kind = SamplerKind::chain;
  } else if (o.mode == "product") {
    kind = SamplerKind::product;
  } else {
    throw InputError("--mode must be 'chain' or 'product'");
  }

  const SampleBatch batch = simulate(chain, {o.seed, o.stream}, o.samples, kind, o.workers);

  std::ofstream csv(o.out_path);
  if (!csv) throw InputError("cannot write " + o.out_path);
  csv << "index,value,mantissa,first_digit\n";
  for (std::size_t i = 0; i < batch.count(); ++i) {
    const double x = batch.values[i];
    const double m = mantissa(x, chain.base());
    csv << batch.indices[i] << ',' << g17(x) << ',' << g17(m) << ',' << static_cast<int>(m) << '\n';
  }
  csv.close();
  if (!csv) throw InputError("failed writing " + o.out_path);

  json config = base_config("simulate");
  config.update({{"chain_path", o.chain_path}, {"chain", chain_to_json(chain)},
                 {"samples", o.samples}, {"seed", o.seed}, {"stream", o.stream},
                 {"workers", o.workers}, {"mode", o.mode}, {"out", o.out_path},
                 {"grid", o.grid}, {"rng", kRngAlgorithm}, {"stream_quota", kStreamQuota}});
  json stats = {{"config", config},
                {"requested", batch.requested},
                {"count", batch.count()},
                {"failures", batch.failures},
                {"failure_rate", static_cast<double>(batch.failures) / static_cast<double>(batch.requested)}};
  if (batch.count() > 0) {
    const ConformanceReport report = audit_dataset(batch.values, chain.base(), std::nullopt, o.grid);
    json benford = json::array();
    for (int d = 1; d < chain.base(); ++d) benford.push_back(benford_digit_prob(d, chain.base()));
    stats.update({{"digit_frequencies", report.digit_frequencies()},
                  {"benford_frequencies", benford},
                  {"sup_deviation", report.sup_deviation},
                  {"chi_square", report.chi_square},
                  {"ks_critical", report.ks_critical},
                  {"conforms", report.conforms}});
  }
  print_json(out, stats);
  return kExitOk;
}

int cmd_audit(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const bool by_name = sub.count("--column") > 0;
  const bool by_index = sub.count("--col-index") > 0;
  if (by_name == by_index) throw InputError("audit needs exactly one of --column or --col-index");
  const ColumnSelector selector = by_name ? ColumnSelector{o.column} : ColumnSelector{o.col_index};
  const CsvColumn column = read_csv_column(o.input_path, selector, !o.no_header);
  if (column.values.empty()) throw InputError("audit: no numeric values in the selected column");

  const ConformanceReport report = audit_dataset(column.values, o.base, o.bound, o.grid);

  json config = base_config("audit");
  config.update({{"input", o.input_path}, {"base", o.base}, {"grid", o.grid},
                 {"header", !o.no_header}});
  if (by_name) config["column"] = o.column; else config["col_index"] = o.col_index;
  config["bound"] = o.bound ? json(*o.bound) : json(nullptr);
  err << "# config: " << config.dump() << '\n';

  json benford = json::array();
  for (int d = 1; d < o.base; ++d) benford.push_back(benford_digit_prob(d, o.base));
  print_json(out, {{"count", report.stats.count},
                   {"skipped", report.skipped + column.non_numeric},
                   {"base", o.base},
                   {"digit_frequencies", report.digit_frequencies()},
                   {"benford_frequencies", benford},
                   {"sup_deviation", report.sup_deviation},
                   {"chi_square", report.chi_square},
                   {"ks_critical", report.ks_critical},
                   {"conforms", report.conforms},
                   {"bound_context", report.bound_context ? json(*report.bound_context) : json(nullptr)},
                   {"bound_consistent", report.bound_consistent ? json(*report.bound_consistent) : json(nullptr)}});
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Benford convergence of chained scale-family distributions", "benford-chains"};
  app.require_subcommand(1, 1);

  auto* bound = app.add_subcommand("bound", "Rigorous deviation bound for a chain spec");
  bound->add_option("--chain", o.chain_path, "Chain-spec JSON file")->required();
  bound->add_option("--a", o.a, "Interval start in [0,1]")->capture_default_str();
  bound->add_option("--b", o.b, "Interval end in [0,1]")->capture_default_str();
  bound->add_option("--lmax", o.lmax, "Truncation point L")->capture_default_str();

  auto* bound_exp = app.add_subcommand("bound-exp", "Closed-form bound for n chained exponentials");
  bound_exp->add_option("--n", o.n, "Chain length (>= 2)")->required();
  bound_exp->add_option("--base", o.base, "Digit base")->capture_default_str();

  auto* bound_uniform = app.add_subcommand("bound-uniform", "Closed-form base-10 bound for uniform chains");
  bound_uniform->add_option("--n", o.n, "Chain length (>= 2)")->required();
  bound_uniform->add_option("--k", o.k, "Initial scale in [1,10)")->required();
  bound_uniform->add_option("--s", o.s, "Mantissa threshold in [1,10)")->required();

  auto* fold = app.add_subcommand("fold", "Probability that log_B X_n mod 1 lies in [a,b]");
  fold->add_option("--chain", o.chain_path, "Chain-spec JSON file")->required();
  fold->add_option("--a", o.a, "Interval start in [0,1]")->capture_default_str();
  fold->add_option("--b", o.b, "Interval end in [0,1]")->capture_default_str();
  fold->add_option("--lmax", o.lmax, "Truncation point L")->capture_default_str();

  auto* digits = app.add_subcommand("digits", "First-digit probabilities of a chain (CSV)");
  digits->add_option("--chain", o.chain_path, "Chain-spec JSON file")->required();
  digits->add_option("--lmax", o.lmax, "Truncation point L")->capture_default_str();

  auto* density = app.add_subcommand("density-uniform", "Uniform-chain density on a geometric grid (CSV)");
  density->add_option("--n", o.n, "Chain length (>= 1)")->required();
  density->add_option("--k", o.k, "Initial scale")->required();
  density->add_option("--points", o.points, "Grid points")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Seeded Monte Carlo draws of X_n");
  sim->add_option("--chain", o.chain_path, "Chain-spec JSON file")->required();
  sim->add_option("--samples", o.samples, "Number of draws")->required();
  sim->add_option("--seed", o.seed, "RNG seed")->required();
  sim->add_option("--out", o.out_path, "Sample CSV output path")->required();
  sim->add_option("--stream", o.stream, "First substream index")->capture_default_str();
  sim->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
  sim->add_option("--mode", o.mode, "chain | product")->capture_default_str();
  sim->add_option("--grid", o.grid, "Mantissa grid size for the summary")->capture_default_str();

  auto* audit = app.add_subcommand("audit", "Benford conformance report for a CSV column");
  audit->add_option("--input", o.input_path, "CSV file")->required();
  auto* by_name = audit->add_option("--column", o.column, "Column name (needs header)");
  auto* by_index = audit->add_option("--col-index", o.col_index, "Zero-based column index");
  by_name->excludes(by_index);
  audit->add_option("--base", o.base, "Digit base")->capture_default_str();
  audit->add_option("--bound", o.bound, "Analytic deviation bound to compare against");
  audit->add_flag("--no-header", o.no_header, "The CSV has no header row");
  audit->add_option("--grid", o.grid, "Mantissa grid size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitInvalidInput;
  }

  try {
    if (*bound) return cmd_bound(o, out);
    if (*bound_exp) return cmd_bound_exp(o, out);
    if (*bound_uniform) return cmd_bound_uniform(o, out);
    if (*fold) return cmd_fold(o, out);
    if (*digits) return cmd_digits(o, out);
    if (*density) return cmd_density_uniform(o, out);
    if (*sim) return cmd_simulate(o, out);
    if (*audit) return cmd_audit(o, *audit, out, err);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  err << app.help();
  return kExitInvalidInput;
}

}  // namespace benford::cli
