// Copyright 2026 The owflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/verify_suite.h"
#include "owflab/bitsampler.h"
#include "owflab/errors.h"
#include "owflab/languages.h"
#include "owflab/owf.h"
#include "owflab/threshold.h"
#include "owflab/turing.h"

namespace owflab::cli {
namespace {

using nlohmann::json;

std::string Timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string Format(const RunConfig& c, const std::string& fallback) {
  return c.format.empty() ? fallback : c.format;
}

void RequireFormat(const RunConfig& c, const std::string& got,
                   std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (got == a) return;
  }
  throw UsageError("command '" + c.command + "' does not write format '" +
                   got + "'");
}

// The only line that varies between identical runs.
void CsvHeader(const RunConfig& c, std::ostream& out) {
  out << "# owflab " << c.command << ' ' << ToJson(c).dump()
      << " generated=" << Timestamp() << '\n';
}

void JsonHeader(const RunConfig& c, std::ostream& out) {
  out << json{{"owflab", c.command},
              {"config", ToJson(c)},
              {"generated", Timestamp()}}
             .dump()
      << '\n';
}

KProfile Profile(const RunConfig& c) {
  try {
    return ParseKProfile(c.k_profile);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::optional<mpq_class> Alpha(const RunConfig& c) {
  if (!c.alpha) return std::nullopt;
  return ParseAlpha(*c.alpha);
}

LanguageOracle Oracle(const RunConfig& c, const std::string& fallback) {
  const std::string name = c.oracle.empty() ? fallback : c.oracle;
  try {
    return OracleByName(name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

// Power surrogate whose density exponent equals beta.
std::string MatchedOracle(unsigned beta) {
  if (beta <= 1) return "full";
  if (beta == 2) return "sq";
  return "power" + std::to_string(beta);
}

json ParamsJson(const SamplerParams& p) {
  return json{{"n", p.n},
              {"beta", p.beta},
              {"alpha", p.alpha.get_str()},
              {"alpha_overridden", p.alpha_overridden},
              {"N", p.urn},
              {"s", p.s},
              {"p_upper", p.p_upper.get_str()},
              {"p_lower", static_cast<double>(p.p_lower)},
              {"mu_lower", p.mu_lower},
              {"m", p.m},
              {"degenerate", p.degenerate}};
}

int CmdDensity(const RunConfig& c, std::ostream& out) {
  RequireFormat(c, Format(c, "csv"), {"csv"});
  const LanguageOracle lang = Oracle(c, "sq");
  const DensityTable table = BuildDensityTable(lang, c.limit, c.threads);
  CsvHeader(c, out);
  WriteDensityCsv(out, lang, table);
  if (c.limit == 0) return kExitPass;
  const DensityBoundReport rep = CheckDensityBounds(lang, table, lang.d > 0);
  out << "# violations lower=" << rep.lower_violations
      << " upper=" << rep.upper_violations << '\n';
  return rep.ok() ? kExitPass : kExitViolation;
}

int CmdThreshold(const RunConfig& c, std::ostream& out) {
  RequireFormat(c, Format(c, "csv"), {"csv"});
  const auto rows = SandwichSweep(c.n_min, c.n_max, c.threads);
  CsvHeader(c, out);
  WriteThresholdCsv(out, rows);
  std::uint64_t sandwich = 0;
  for (const auto& r : rows) sandwich += !r.sandwiched;
  const GridSummary grid = BollobasGrid(std::max<std::uint64_t>(c.n_min, 2),
                                        c.n_max, {1, 2, 4}, c.threads);
  out << "# sandwich_violations=" << sandwich
      << " bollobas_thetas=1,2,4 bollobas_checks=" << grid.checks
      << " bollobas_violations=" << grid.violations << '\n';
  return sandwich == 0 && grid.violations == 0 ? kExitPass : kExitViolation;
}

int CmdCensus(const RunConfig& c, std::ostream& out) {
  RequireFormat(c, Format(c, "csv"), {"csv"});
  std::vector<CensusRow> rows;
  for (std::uint64_t len : c.lengths) {
    rows.push_back(DiagonalCensus(len, DefaultTimeBounds(), c.threads));
  }
  CsvHeader(c, out);
  WriteCensusCsv(out, rows);
  return kExitPass;
}

int CmdBias(const RunConfig& c, std::ostream& out) {
  RequireFormat(c, Format(c, "csv"), {"csv"});
  const BiasProfile p = c.k <= kMaxEnumeratedK ? EnumerateBias(c.k, c.range)
                                               : ClosedFormBias(c.k, c.range);
  CsvHeader(c, out);
  out << "index,count,probability,deviation\n";
  mpz_class total = 1;
  total <<= c.k;
  const mpq_class h(1, static_cast<unsigned long>(c.range));
  for (std::size_t i = 0; i < p.counts.size(); ++i) {
    mpq_class prob(p.counts[i], total);
    prob.canonicalize();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g",
                  mpq_class(prob - h).get_d());
    out << i << ',' << p.counts[i].get_str() << ',' << prob.get_str() << ','
        << buf << '\n';
  }
  out << "# max_deviation=" << p.max_deviation.get_str()
      << " bound=" << p.bound.get_str() << " ok=" << (p.ok() ? 1 : 0) << '\n';
  return p.ok() ? kExitPass : kExitViolation;
}

int CmdPermutation(const RunConfig& c, std::ostream& out) {
  RequireFormat(c, Format(c, "csv"), {"csv"});
  const KProfile profile = Profile(c);
  const std::uint64_t k = BitsPerDraw(c.n, profile);
  const PermutationDistribution d = ComputePermutationDistribution(c.n, k);
  const bool paper_k = k >= c.n * c.n + 2;
  const mpq_class& bound = paper_k ? d.paper_bound : d.step_bound;
  CsvHeader(c, out);
  out << "permutation,probability,probability_float\n";
  for (const auto& s : d.sequences) {
    std::string perm;
    for (std::uint64_t v : s.perm) {
      if (!perm.empty()) perm += ' ';
      perm += std::to_string(v);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", s.probability.get_d());
    out << perm << ',' << s.probability.get_str() << ',' << buf << '\n';
  }
  const bool ok = d.min_probability >= bound && d.total == 1;
  out << "# k=" << k << " min=" << d.min_probability.get_str()
      << " bound=" << bound.get_str() << " ok=" << (ok ? 1 : 0) << '\n';
  return ok ? kExitPass : kExitViolation;
}

int CmdExperiment(const RunConfig& c, std::ostream& out) {
  RequireFormat(c, Format(c, "json"), {"json"});
  ExperimentConfig cfg;
  cfg.n = c.n;
  cfg.beta = c.beta;
  cfg.trials = c.trials;
  cfg.seed = c.seed;
  cfg.profile = Profile(c);
  cfg.alpha = Alpha(c);
  cfg.threads = c.threads;
  const BijectivityReport r =
      SamplingErrorExperiment(cfg, Oracle(c, MatchedOracle(c.beta)));
  const bool ok = r.b0.concordant() && r.b1.concordant();
  JsonHeader(c, out);
  out << json{{"params", ParamsJson(r.params)},
              {"oracle", r.oracle},
              {"k_profile", KProfileName(r.profile)},
              {"trials", r.trials},
              {"urn_good", r.urn_good},
              {"thinned_good_histogram", r.thinned_good_histogram},
              {"miss0", r.miss0},
              {"miss1", r.miss1},
              {"exact0", r.exact0},
              {"exact1", r.exact1},
              {"sigma0", r.b0.sigma},
              {"sigma1", r.b1.sigma},
              {"concordant", ok},
              {"criterion_value", r.criterion_value},
              {"bijectivity_criterion_satisfied", r.bijectivity_criterion},
              {"e_ell_frequency", r.e_ell_frequency},
              {"orientation", r.orientation},
              {"reference_factor", r.reference_factor},
              {"bits_consumed", r.bits_consumed}}
             .dump()
      << '\n';
  return ok ? kExitPass : kExitViolation;
}

int CmdOwf(const RunConfig& c, std::ostream& out) {
  RequireFormat(c, Format(c, "json"), {"json"});
  OwfConfig cfg;
  cfg.beta = c.beta;
  cfg.profile = Profile(c);
  cfg.alpha = Alpha(c);
  Word w;
  if (!c.input.empty()) {
    w = Word::FromString(c.input);
  } else {
    const std::uint64_t ell =
        c.ell != 0 ? c.ell : MinimumFeasibleLength(c.n, cfg);
    w = BitTape::FromSeed(c.seed, ell).PeekWord(ell);
  }
  JsonHeader(c, out);
  try {
    const OwfOutput o = OwfEvaluate(w, cfg);
    json sets = json::array();
    for (const auto& s : o.sets) sets.push_back(s.members);
    out << json{{"ell", w.size()},
                {"params", ParamsJson(o.params)},
                {"k_profile", KProfileName(cfg.profile)},
                {"sets", sets},
                {"round_consumed", o.round_consumed},
                {"bits_consumed", o.bits_consumed},
                {"encoding_bits", o.Encode().size()}}
               .dump()
        << '\n';
    return kExitPass;
  } catch (const InfeasibleLength& e) {
    out << json{{"ell", w.size()},
                {"error", e.what()},
                {"n", e.n()},
                {"feasible_n", e.feasible_n()}}
               .dump()
        << '\n';
    return kExitViolation;
  }
}

int CmdVerifyAll(const RunConfig& c, std::ostream& out) {
  const std::string fmt = Format(c, "json");
  RequireFormat(c, fmt, {"json", "csv"});
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.profile = Profile(c);
  opt.threads = c.threads;
  const auto results = RunAllCriteria(opt);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (fmt == "json") {
    JsonHeader(c, out);
    out << ResultsToJson(results).dump() << '\n';
  } else {
    CsvHeader(c, out);
    out << "id,name,pass\n";
    for (const auto& r : results) {
      out << r.id << ',' << r.name << ',' << (r.pass ? 1 : 0) << '\n';
    }
  }
  return all ? kExitPass : kExitViolation;
}

}  // namespace

mpq_class ParseAlpha(const std::string& text) {
  std::string t = text;
  mpq_class q;
  const auto dot = t.find('.');
  if (dot != std::string::npos) {
    const std::string frac = t.substr(dot + 1);
    t = t.substr(0, dot) + frac + "/1" + std::string(frac.size(), '0');
  }
  if (t.empty() || q.set_str(t, 10) != 0 || q.get_den() == 0) {
    throw UsageError("bad alpha '" + text + "'");
  }
  q.canonicalize();
  return q;
}

int RunCommand(const RunConfig& c, std::ostream& out) {
  Profile(c);  // reject a bad profile even where the command ignores it
  try {
    if (c.command == "density") return CmdDensity(c, out);
    if (c.command == "threshold") return CmdThreshold(c, out);
    if (c.command == "census") return CmdCensus(c, out);
    if (c.command == "bias") return CmdBias(c, out);
    if (c.command == "permutation") return CmdPermutation(c, out);
    if (c.command == "experiment") return CmdExperiment(c, out);
    if (c.command == "owf") return CmdOwf(c, out);
    if (c.command == "verify-all") return CmdVerifyAll(c, out);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  } catch (const BudgetError& e) {
    throw UsageError(e.what());
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown command '" + c.command + "'");
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"owflab: verification laboratory for threshold-sampling "
               "one-way functions"};
  std::string command, config_path, alpha, lengths;
  RunConfig flags;
  app.add_option("command", command,
                 "density | threshold | census | bias | permutation | "
                 "experiment | owf | verify-all")
      ->required();
  app.add_option("--config", config_path, "JSON file mirroring the flags");
  auto* o_seed = app.add_option("--seed", flags.seed);
  auto* o_beta = app.add_option("--beta", flags.beta);
  auto* o_alpha = app.add_option("--alpha", alpha, "e.g. 8 or 15/2");
  auto* o_n = app.add_option("--n", flags.n);
  auto* o_ell = app.add_option("--ell", flags.ell);
  auto* o_trials = app.add_option("--trials", flags.trials);
  auto* o_oracle = app.add_option("--oracle", flags.oracle);
  auto* o_kprof = app.add_option("--k-profile", flags.k_profile,
                                 "paper | practical");
  auto* o_format = app.add_option("--format", flags.format, "csv | json");
  auto* o_out = app.add_option("--out", flags.out);
  auto* o_limit = app.add_option("--limit", flags.limit, "density range X");
  auto* o_nmin = app.add_option("--n-min", flags.n_min);
  auto* o_nmax = app.add_option("--n-max", flags.n_max);
  auto* o_k = app.add_option("--k", flags.k, "bits per draw (bias)");
  auto* o_range = app.add_option("--range", flags.range);
  auto* o_lengths = app.add_option("--lengths", lengths, "e.g. 4,6,8");
  auto* o_input = app.add_option("--input", flags.input, "owf input bits");
  auto* o_threads = app.add_option("--threads", flags.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "owflab: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    RunConfig c;
    if (!config_path.empty()) ApplyConfigFile(config_path, &c);
    c.command = command;
    auto set = [](CLI::Option* o) { return o->count() > 0; };
    if (set(o_seed)) c.seed = flags.seed;
    if (set(o_beta)) c.beta = flags.beta;
    if (set(o_alpha)) c.alpha = alpha;
    if (set(o_n)) c.n = flags.n;
    if (set(o_ell)) c.ell = flags.ell;
    if (set(o_trials)) c.trials = flags.trials;
    if (set(o_oracle)) c.oracle = flags.oracle;
    if (set(o_kprof)) c.k_profile = flags.k_profile;
    if (set(o_format)) c.format = flags.format;
    if (set(o_out)) c.out = flags.out;
    if (set(o_limit)) c.limit = flags.limit;
    if (set(o_nmin)) c.n_min = flags.n_min;
    if (set(o_nmax)) c.n_max = flags.n_max;
    if (set(o_k)) c.k = flags.k;
    if (set(o_range)) c.range = flags.range;
    if (set(o_input)) c.input = flags.input;
    if (set(o_threads)) c.threads = flags.threads;
    if (set(o_lengths)) {
      c.lengths.clear();
      std::stringstream ss(lengths);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          c.lengths.push_back(std::stoull(item));
        } catch (const std::exception&) {
          throw UsageError("bad --lengths entry '" + item + "'");
        }
      }
    }
    if (c.out.empty()) return RunCommand(c, out);
    // Render first so a failing command leaves no partial file behind.
    std::ostringstream buf;
    const int code = RunCommand(c, buf);
    std::ofstream file(c.out, std::ios::binary);
    if (!file || !(file << buf.str()) || !file.flush()) {
      throw UsageError("cannot write '" + c.out + "'");
    }
    return code;
  } catch (const UsageError& e) {
    err << "owflab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "owflab: " << e.what() << '\n';
    return kExitViolation;
  }
}

}  // namespace owflab::cli
