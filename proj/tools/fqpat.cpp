// Command-line driver for the pattern-threshold experiments. Every output is
// self-describing: the full run configuration is echoed into the file header
// (or a "config" object for JSON), so a file can be regenerated bit-exactly
// from its own header.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include "fqpat/census.hpp"
#include "fqpat/extremal.hpp"
#include "fqpat/sampler.hpp"
#include "fqpat/stats.hpp"

using namespace fqpat;

namespace {

struct RunConfig {
  std::string command;
  std::string family = "3ap";
  std::string model = "bernoulli";
  std::string format = "csv";
  std::string out;
  std::string scales = "0.125,0.25,0.5,1,2,4,8";
  std::string export_path;
  std::vector<std::string> qn_list;
  std::uint32_t q = 3, n = 2, m = 1;
  double delta = -1.0;  // -1: default to the threshold
  double lambda = 1.0;
  std::uint64_t M = 0, f = 0;
  std::uint64_t trials = 10000, seed = 1;
  std::uint32_t seeds = 20;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t max_points = 1ull << 24;
  std::uint64_t max_patterns = 5'000'000;
};

std::vector<std::pair<std::string, std::string>> config_items(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("command", c.command);
  kv.emplace_back("family", c.family);
  kv.emplace_back("q", std::to_string(c.q));
  kv.emplace_back("n", std::to_string(c.n));
  kv.emplace_back("m", std::to_string(c.m));
  if (c.command == "sample") kv.emplace_back("model", c.model);
  if (c.delta >= 0.0) kv.emplace_back("delta", fmt_double(c.delta));
  if (c.command == "poisson") kv.emplace_back("lambda", fmt_double(c.lambda));
  if (c.command == "sweep") kv.emplace_back("scales", c.scales);
  if (c.command == "sample" || c.command == "exactprob") {
    kv.emplace_back("M", std::to_string(c.M));
    if (c.command == "exactprob") kv.emplace_back("f", std::to_string(c.f));
  }
  kv.emplace_back("trials", std::to_string(c.trials));
  kv.emplace_back("seed", std::to_string(c.seed));
  if (c.command == "extremal") kv.emplace_back("seeds", std::to_string(c.seeds));
  kv.emplace_back("workers", std::to_string(c.workers));
  kv.emplace_back("max_points", std::to_string(c.max_points));
  kv.emplace_back("max_patterns", std::to_string(c.max_patterns));
  kv.emplace_back("rng", rng::kGeneratorId);
  return kv;
}

std::string header_comment(const RunConfig& c) {
  std::string h;
  for (const auto& [k, v] : config_items(c)) h += "# " + k + "=" + v + "\n";
  return h;
}

nlohmann::ordered_json header_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : config_items(c)) j[k] = v;
  return j;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) fail(Errc::BadParams, "cannot open output file " + c.out);
  f << text;
}

EnumCaps caps_of(const RunConfig& c) {
  EnumCaps caps;
  caps.max_patterns = c.max_patterns;
  return caps;
}

std::unique_ptr<const PatternFamily> build_family(const RunConfig& c) {
  auto kind = kind_from_name(c.family);
  if (!kind) fail(Errc::BadParams, "unknown family '" + c.family + "' (expected 3ap|pg|rt|plane)");
  auto space = make_space(make_field(c.q), c.n, c.max_points);
  return PatternFamily::make(*kind, space, c.m, caps_of(c));
}

// Fixed tabular column order used by every stats command.
const char* kStatsHeader = "family,q,n,m,delta,trials,seed,p_hat,stderr,E_X,mean_X,tv,r1,r2,r3,r4\n";

std::string stats_row(const RunConfig& c, double delta, const std::string& p_hat,
                      const std::string& se, const std::string& ex, const std::string& mean_x,
                      const std::string& tv, const std::vector<std::string>& moments) {
  std::string row = c.family;
  row += "," + std::to_string(c.q) + "," + std::to_string(c.n) + ",";
  row += (c.family == "plane" ? std::to_string(c.m) : "");
  row += "," + fmt_double(delta) + "," + std::to_string(c.trials) + "," + std::to_string(c.seed);
  row += "," + p_hat + "," + se + "," + ex + "," + mean_x + "," + tv;
  for (std::size_t r = 0; r < 4; ++r) row += "," + (r < moments.size() ? moments[r] : std::string());
  return row + "\n";
}

int cmd_census(const RunConfig& c) {
  auto family = build_family(c);
  double delta = c.delta >= 0.0 ? c.delta : threshold(*family);
  CensusReport rep = condition_report(*family, delta);
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = header_json(c);
    nlohmann::ordered_json body = nlohmann::ordered_json::parse(census_json(rep));
    for (auto& [k, v] : body.items()) j[k] = v;
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, header_comment(c) + census_csv(rep));
  }
  return 0;
}

std::vector<double> parse_scales(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) fail(Errc::BadParams, "empty scale list");
  return out;
}

int cmd_sweep(const RunConfig& c) {
  auto family = build_family(c);
  auto rows = threshold_sweep(*family, parse_scales(c.scales), c.trials, c.seed, c.workers);
  std::string text = header_comment(c) + kStatsHeader;
  for (const auto& r : rows)
    text += stats_row(c, r.delta, fmt_double(r.p_hat), fmt_double(r.stderror), fmt_double(r.e_x),
                      "", "", {});
  emit(c, text);
  return 0;
}

int cmd_poisson(const RunConfig& c) {
  auto family = build_family(c);
  if (!(c.lambda > 0.0)) fail(Errc::BadParams, "lambda must be positive");
  // delta with E(X) = lambda from the exact census
  using bf = boost::multiprecision::cpp_bin_float_50;
  double logA = static_cast<double>(boost::multiprecision::log(bf(family_size(*family))));
  double delta = std::exp((std::log(c.lambda) - logA) / static_cast<double>(family->arity()));
  if (delta > 1.0) fail(Errc::BadParams, "lambda is unreachable: delta would exceed 1");
  Histogram h = distribution_X(*family, delta, c.trials, c.seed, c.workers);
  PoissonFit fit = poisson_fit(h, c.lambda, 4);
  std::uint64_t zero = h.counts.count(0) ? h.counts.at(0) : 0;
  double p_ge1 = 1.0 - static_cast<double>(zero) / static_cast<double>(c.trials);
  double se = std::sqrt(p_ge1 * (1.0 - p_ge1) / static_cast<double>(c.trials));

  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = header_json(c);
    j["lambda"] = fit.lambda;
    j["delta"] = delta;
    j["tv"] = fit.tv_distance;
    nlohmann::ordered_json ms = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < fit.moments.size(); ++r)
      ms.push_back({{"r", r + 1}, {"value", fit.moments[r].value}, {"stderr", fit.moments[r].stderror}});
    j["moments"] = ms;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [v, cnt] : h.counts) hist[std::to_string(v)] = cnt;
    j["histogram"] = hist;
    emit(c, j.dump(2) + "\n");
  } else {
    std::vector<std::string> ms;
    for (const auto& m : fit.moments) ms.push_back(fmt_double(m.value));
    std::string text = header_comment(c) + kStatsHeader +
                       stats_row(c, delta, fmt_double(p_ge1), fmt_double(se),
                                 fmt_double(expected_X(*family, delta)), fmt_double(h.mean()),
                                 fmt_double(fit.tv_distance), ms);
    emit(c, text);
  }
  return 0;
}

int cmd_extremal(const RunConfig& c) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> qns;
  if (c.qn_list.empty()) {
    qns.emplace_back(c.q, c.n);
  } else {
    for (const auto& s : c.qn_list) {
      auto pos = s.find(':');
      if (pos == std::string::npos) fail(Errc::BadParams, "--qn expects q:n");
      qns.emplace_back(static_cast<std::uint32_t>(std::stoul(s.substr(0, pos))),
                       static_cast<std::uint32_t>(std::stoul(s.substr(pos + 1))));
    }
  }
  std::string text = header_comment(c) +
                     "family,q,n,m,delta,seeds,base_seed,best_size,best_seed,rate,ratio\n";
  std::string export_text;
  for (auto [q, n] : qns) {
    RunConfig cc = c;
    cc.q = q;
    cc.n = n;
    auto family = build_family(cc);
    ExtremalRow row = extremal_row(*family, c.seeds, c.seed);
    text += c.family;
    text += "," + std::to_string(q) + "," + std::to_string(n) + ",";
    text += (c.family == "plane" ? std::to_string(c.m) : "");
    text += "," + fmt_double(row.delta) + "," + std::to_string(row.seeds) + "," +
            std::to_string(c.seed) + "," + std::to_string(row.best_size) + "," +
            std::to_string(row.best_seed) + "," + fmt_double(row.rate) + "," +
            fmt_double(row.ratio) + "\n";
    if (!c.export_path.empty() && qns.size() == 1) {
      FreeSetResult best = deletion_construct(*family, row.best_seed);
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (auto p : best.points) j.push_back(p);
      export_text = j.dump() + "\n";
    }
  }
  emit(c, text);
  if (!export_text.empty()) {
    std::ofstream f(c.export_path, std::ios::binary | std::ios::trunc);
    if (!f) fail(Errc::BadParams, "cannot open export file " + c.export_path);
    f << export_text;
  }
  return 0;
}

int cmd_sample(const RunConfig& c) {
  if (c.model == "bernoulli" && c.delta < 0) fail(Errc::BadParams, "the Bernoulli model needs --delta");
  auto space = make_space(make_field(c.q), c.n, c.max_points);
  std::string text = header_comment(c);
  for (std::uint64_t t = 0; t < c.trials; ++t) {
    SampleSet e = (c.model == "uniform") ? sample_uniform_m(space, c.M, c.seed, t)
                                         : sample_bernoulli(space, c.delta, c.seed, t);
    text += e.bits.hex() + "\n";
  }
  emit(c, text);
  return 0;
}

int cmd_exactprob(const RunConfig& c) {
  BigRat p = er_containment_prob(c.q, c.n, c.M, c.f);
  std::string text = header_comment(c) + boost::multiprecision::numerator(p).str() + "/" +
                     boost::multiprecision::denominator(p).str() + "\n";
  emit(c, text);
  return 0;
}

void add_common(CLI::App* cmd, RunConfig& c, bool family_opts) {
  if (family_opts) {
    cmd->add_option("--family", c.family, "pattern family: 3ap|pg|rt|plane");
    cmd->add_option("--m", c.m, "plane dimension (plane family only)");
  }
  cmd->add_option("--q", c.q, "field order (prime power)");
  cmd->add_option("--n", c.n, "space dimension");
  cmd->add_option("--trials", c.trials, "Monte Carlo trials");
  cmd->add_option("--seed", c.seed, "base seed");
  cmd->add_option("--workers", c.workers, "worker threads");
  cmd->add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "output path (default stdout)");
  cmd->add_option("--max-points", c.max_points, "space cap override");
  cmd->add_option("--max-patterns", c.max_patterns, "pattern materialization cap override");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  if (const char* env = std::getenv("FQPAT_MAX_POINTS")) c.max_points = std::strtoull(env, nullptr, 10);
  if (const char* env = std::getenv("FQPAT_MAX_PATTERNS")) c.max_patterns = std::strtoull(env, nullptr, 10);

  CLI::App app{"pattern thresholds in random subsets of finite vector spaces"};
  app.require_subcommand(1);

  auto* census = app.add_subcommand("census", "exact family and intersection censuses");
  add_common(census, c, true);
  census->add_option("--delta", c.delta, "density for E(X)/E(Y) (default: the threshold)");

  auto* sweep = app.add_subcommand("sweep", "coupled threshold sweep");
  add_common(sweep, c, true);
  sweep->add_option("--scales", c.scales, "comma-separated ascending multipliers of t(n,q)");

  auto* poisson = app.add_subcommand("poisson", "distribution of X and Poisson fit");
  add_common(poisson, c, true);
  poisson->add_option("--lambda", c.lambda, "target mean E(X)");

  auto* extremal = app.add_subcommand("extremal", "deletion-method free-set construction");
  add_common(extremal, c, true);
  extremal->add_option("--seeds", c.seeds, "seed budget per row");
  extremal->add_option("--qn", c.qn_list, "extra rows as q:n (repeatable)");
  extremal->add_option("--export", c.export_path, "write the best free set as a JSON array");

  auto* sample = app.add_subcommand("sample", "raw sample dump, one hex bitset per trial");
  add_common(sample, c, false);
  sample->add_option("--model", c.model, "bernoulli|uniform")->check(CLI::IsMember({"bernoulli", "uniform"}));
  sample->add_option("--delta", c.delta, "Bernoulli density");
  sample->add_option("--M", c.M, "uniform-model cardinality");

  auto* exactprob = app.add_subcommand("exactprob", "exact containment probability under the M-model");
  add_common(exactprob, c, false);
  exactprob->add_option("--M", c.M, "subset cardinality")->required();
  exactprob->add_option("--f", c.f, "fixed set size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (census->parsed()) {
      c.command = "census";
      return cmd_census(c);
    }
    if (sweep->parsed()) {
      c.command = "sweep";
      return cmd_sweep(c);
    }
    if (poisson->parsed()) {
      c.command = "poisson";
      return cmd_poisson(c);
    }
    if (extremal->parsed()) {
      c.command = "extremal";
      return cmd_extremal(c);
    }
    if (sample->parsed()) {
      c.command = "sample";
      return cmd_sample(c);
    }
    if (exactprob->parsed()) {
      c.command = "exactprob";
      return cmd_exactprob(c);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_cap() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
