// graphonreg: generation, weak regularization, accumulation sweeps and
// expander reports from the command line.

#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphonreg/algebraic_regularity.h"
#include "graphonreg/error.h"
#include "graphonreg/expander.h"
#include "graphonreg/families.h"
#include "graphonreg/finite_field.h"
#include "graphonreg/json_io.h"
#include "graphonreg/spectral.h"
#include "parallel.h"

namespace graphonreg {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundViolated = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

constexpr char kCsvVersion[] = "# graphon-reg v1\n";
constexpr std::int64_t kMaxGridBound = 1'000'000;

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::int64_t ParseInt(std::string_view s) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ValidationError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

bool IsPrimePower(std::int64_t q) {
  try {
    ToPrimePower(q);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

// "5,7,11", "primes:a..b" or "primepowers:a..b"; ascending for the ranges.
std::vector<std::int64_t> ParseGrid(const std::string& spec) {
  std::vector<std::int64_t> out;
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    std::stringstream in(spec);
    for (std::string item; std::getline(in, item, ',');) {
      if (!item.empty()) out.push_back(ParseInt(item));
    }
  } else {
    const std::string kind = spec.substr(0, colon);
    const std::string range = spec.substr(colon + 1);
    const auto dots = range.find("..");
    if ((kind != "primes" && kind != "primepowers") || dots == std::string::npos) {
      throw ValidationError("bad grid '" + spec + "'");
    }
    const std::int64_t lo = ParseInt(range.substr(0, dots));
    const std::int64_t hi = ParseInt(range.substr(dots + 2));
    if (hi > kMaxGridBound) throw ValidationError("grid bound exceeds " + std::to_string(kMaxGridBound));
    std::vector<bool> composite(static_cast<std::size_t>(std::max<std::int64_t>(hi, 1)) + 1, false);
    for (std::int64_t p = 2; p <= hi; ++p) {
      if (composite[static_cast<std::size_t>(p)]) continue;
      for (std::int64_t m = p * p; m <= hi; m += p) composite[static_cast<std::size_t>(m)] = true;
    }
    for (std::int64_t q = std::max<std::int64_t>(lo, 2); q <= hi; ++q) {
      const bool prime = !composite[static_cast<std::size_t>(q)];
      if (kind == "primes" ? prime : IsPrimePower(q)) out.push_back(q);
    }
  }
  if (out.empty()) throw ValidationError("empty grid '" + spec + "'");
  return out;
}

int Threads() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("GRAPHONREG_THREADS")) {
    const std::int64_t cap = ParseInt(env);
    if (cap < 1) throw ValidationError("GRAPHONREG_THREADS must be positive");
    threads = static_cast<int>(std::min<std::int64_t>(threads, cap));
  }
  return threads;
}

// Writes to a sibling temporary and renames it into place; stdout for "-" or
// an empty path.
void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw ValidationError("cannot write " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ValidationError("cannot write " + path);
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void CheckFormat(const std::string& format) {
  if (format != "csv" && format != "json") throw ValidationError("format must be csv or json");
}

struct GenArgs {
  std::string family;
  std::int64_t q = 0;
  std::string out;
};

int RunGen(const GenArgs& a) {
  const FamilyId family = ParseFamily(a.family);
  ValidateFamilyParameter(family, a.q);
  const BipartiteGraph g = Generate(family, a.q);
  WriteOutput(a.out, ToJson(g, GraphOrigin{family, a.q}));
  std::cerr << "vertices " << g.left_count() << " + " << g.right_count() << ", edges " << g.edge_count() << "\n";
  return kExitOk;
}

struct WeakArgs {
  std::string input;
  double eps = 0.0;
  std::string side = "column";
  std::string out;
};

int RunWeakreg(const WeakArgs& a) {
  if (!(a.eps > 0.0 && a.eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
  if (a.side != "column" && a.side != "row") throw ValidationError("side must be column or row");
  const StepKernel w = StepKernelFromJson(ReadFile(a.input));
  const WeakRegularityResult r = WeakRegularize(w, a.eps, a.side == "row" ? KernelSide::kRow : KernelSide::kColumn);
  if (!a.out.empty()) WriteOutput(a.out, ToJson(r));
  std::cout << "cells " << r.cell_count << "\nachieved_error " << Num(r.achieved_inf_error) << "\nbound "
            << Num(r.error_bound()) << "\n";
  if (!(r.achieved_inf_error <= r.error_bound())) {
    std::cerr << "error: achieved error exceeds 2 eps^2\n";
    return kExitBoundViolated;
  }
  return kExitOk;
}

struct SweepArgs {
  std::string family;
  std::string grid;
  double merge_tol = 0.2;
  std::uint64_t seed = 0x5eed;
  std::string format = "csv";
  std::string out;
};

// Throws BudgetError naming every q over budget.
void CheckBudgets(FamilyId family, const std::vector<std::int64_t>& grid) {
  std::string over;
  for (std::int64_t q : grid) {
    try {
      ValidateFamilyParameter(family, q);
    } catch (const BudgetError&) {
      over += (over.empty() ? "" : ",") + std::to_string(q);
    }
  }
  if (!over.empty()) throw BudgetError("q over budget: " + over);
}

int RunSweep(const SweepArgs& a) {
  const FamilyId family = ParseFamily(a.family);
  const std::vector<std::int64_t> grid = ParseGrid(a.grid);
  CheckFormat(a.format);
  if (!(a.merge_tol >= 0.0) || !std::isfinite(a.merge_tol)) throw ValidationError("merge-tol must be nonnegative");
  for (std::int64_t q : grid) ToPrimePower(q);
  CheckBudgets(family, grid);

  RegularizeOptions options;
  options.seed = a.seed;
  const AccumulationResult r = AccumulationScan(family, grid, a.merge_tol, options, Threads());

  std::string text;
  if (a.format == "json") {
    text = ToJson(family, r);
  } else {
    text = kCsvVersion;
    text += "family,q,case_label,n_row_cells,n_col_cells,residual_cut_norm,d_cut_to_prediction\n";
    for (const ScanEntry& e : r.entries) {
      text += std::string(FamilyTag(family)) + "," + std::to_string(e.q) + "," + e.case_label.label + "," +
              std::to_string(e.n_row_cells) + "," + std::to_string(e.n_col_cells) + "," + Num(e.residual_cut_norm) +
              "," + Num(e.d_cut_to_prediction) + "\n";
    }
    text += "# clusters\ncluster,representative_q,size,members\n";
    for (const ScanCluster& c : r.clusters) {
      std::string members;
      for (std::int64_t q : c.members) members += (members.empty() ? "" : " ") + std::to_string(q);
      text += std::to_string(c.id) + "," + std::to_string(c.representative_q) + "," +
              std::to_string(c.members.size()) + "," + members + "\n";
    }
  }
  WriteOutput(a.out, text);
  std::cerr << r.entries.size() << " instances, " << r.clusters.size() << " clusters\n";
  return kExitOk;
}

struct ExpanderArgs {
  std::string morphism;
  std::string grid;
  double c = 0.5;
  double big_c = 1.0;
  int trials = 8;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out;
};

int RunExpander(const ExpanderArgs& a) {
  const MorphismId id = ParseMorphism(a.morphism);
  const std::vector<std::int64_t> grid = ParseGrid(a.grid);
  CheckFormat(a.format);
  if (a.trials < 1) throw ValidationError("trials must be positive");
  if (!(a.c >= 0.0 && a.c <= 1.0)) throw ValidationError("c must lie in [0, 1]");
  if (!(a.big_c > 0.0) || !std::isfinite(a.big_c)) throw ValidationError("C must be positive");
  for (std::int64_t q : grid) {
    ToPrimePower(q);
    if (q > kMaxProbeOrder) throw ValidationError("expander needs q <= " + std::to_string(kMaxProbeOrder));
  }

  std::vector<ExpanderReport> reports(grid.size());
  detail::ParallelFor(static_cast<int>(grid.size()), Threads(), [&](int i) {
    reports[static_cast<std::size_t>(i)] = ExpansionProbe(id, grid[static_cast<std::size_t>(i)], a.c, a.big_c, a.trials, a.seed);
  });

  std::string text;
  if (a.format == "json") {
    nlohmann::json all = nlohmann::json::array();
    for (const ExpanderReport& r : reports) all.push_back(nlohmann::json::parse(ToJson(r)));
    text = all.dump() + "\n";
  } else {
    text = kCsvVersion;
    text += "morphism,q,quadruple_ratio,min_image_fraction,verdict\n";
    for (const ExpanderReport& r : reports) {
      text += std::string(MorphismTag(id)) + "," + std::to_string(r.q) + "," +
              (r.quadruple_ratio ? Num(*r.quadruple_ratio) : std::string()) + "," + Num(r.min_image_fraction) + "," +
              std::string(VerdictName(r.verdict)) + "\n";
    }
  }
  WriteOutput(a.out, text);
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Graphon regularity toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a family graph as JSON");
  gen_cmd->add_option("--family", gen.family, "Family tag")->required();
  gen_cmd->add_option("--q", gen.q, "Field order")->required();
  gen_cmd->add_option("--out", gen.out, "Output path (stdout if omitted)");

  WeakArgs weak;
  CLI::App* weak_cmd = app.add_subcommand("weakreg", "Weakly regularize a kernel's sixth power");
  weak_cmd->add_option("--input", weak.input, "Step kernel JSON")->required();
  weak_cmd->add_option("--eps", weak.eps, "Accuracy in (0, 1]")->required();
  weak_cmd->add_option("--side", weak.side, "column or row");
  weak_cmd->add_option("--out", weak.out, "Write the full result JSON here");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Accumulation scan of a family over a q grid");
  sweep_cmd->add_option("--family", sweep.family, "Family tag")->required();
  sweep_cmd->add_option("--grid", sweep.grid, "q list, primes:a..b or primepowers:a..b")->required();
  sweep_cmd->add_option("--merge-tol", sweep.merge_tol, "Cut distance merge tolerance");
  sweep_cmd->add_option("--seed", sweep.seed, "Seed of the heuristic cut norms");
  sweep_cmd->add_option("--format", sweep.format, "csv or json");
  sweep_cmd->add_option("--out", sweep.out, "Output path (stdout if omitted)");

  ExpanderArgs exp;
  CLI::App* exp_cmd = app.add_subcommand("expander", "Expansion statistics of a morphism over a q grid");
  exp_cmd->add_option("--morphism", exp.morphism, "Morphism tag")->required();
  exp_cmd->add_option("--grid", exp.grid, "q list, primes:a..b or primepowers:a..b")->required();
  exp_cmd->add_option("--c", exp.c, "Exponent c of the set size C q^(1-c)");
  exp_cmd->add_option("--C", exp.big_c, "Constant C");
  exp_cmd->add_option("--trials", exp.trials, "Random set pairs per q");
  exp_cmd->add_option("--seed", exp.seed, "Seed of the random sets");
  exp_cmd->add_option("--format", exp.format, "csv or json");
  exp_cmd->add_option("--out", exp.out, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*gen_cmd) return RunGen(gen);
    if (*weak_cmd) return RunWeakreg(weak);
    if (*sweep_cmd) return RunSweep(sweep);
    return RunExpander(exp);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace
}  // namespace graphonreg

int main(int argc, char** argv) { return graphonreg::Main(argc, argv); }
