#include "convexforest/cli.hpp"

#include "convexforest/agreement.hpp"
#include "convexforest/bounds.hpp"
#include "convexforest/convex_enum.hpp"
#include "convexforest/generators.hpp"
#include "convexforest/lower_bound.hpp"
#include "convexforest/matchings.hpp"
#include "convexforest/mp2.hpp"
#include "convexforest/oracles.hpp"
#include "convexforest/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace convexforest {

namespace {

using nlohmann::json;

struct InputFile {
  std::string path;
  std::string text;
};

InputFile ReadInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return {path, buf.str()};
}

std::string Fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

// Reals are reported with 10 significant digits.
double Sig10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

std::string SigString(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string Str(const BigInt& x) { return x.str(); }

json Blocks(const Character& c, const std::vector<std::string>& labels) {
  json out = json::array();
  for (const auto& block : c.blocks()) {
    json b = json::array();
    for (TaxonId t : block) b.push_back(labels[t]);
    out.push_back(b);
  }
  return out;
}

struct Context {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<InputFile> inputs;
  std::ostream* out;
};

PhyloTree LoadTree(Context& ctx, const std::string& path, NewickMode mode) {
  ctx.inputs.push_back(ReadInput(path));
  return ParseNewick(ctx.inputs.back().text, mode);
}

json Envelope(const std::string& command, const Context& ctx, json output, double elapsed_ms) {
  json inputs = json::array();
  for (const auto& in : ctx.inputs) inputs.push_back({{"path", in.path}, {"fnv1a64", Fnv1a64(in.text)}});
  return {{"command", command},
          {"inputs", inputs},
          {"output", std::move(output)},
          {"elapsed_ms", Sig10(elapsed_ms)},
          {"seed", ctx.seed}};
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact algorithms for convex characters, agreement forests and parsimony distance",
               "convexforest"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.out = &out;
  long long seed_flag = -1;
  app.add_option("--seed", seed_flag, "Random seed (default: $CONVEXFOREST_SEED or 0)");
  app.add_option("--jobs", ctx.jobs, "Worker threads for rank-partitioned loops")->check(CLI::PositiveNumber);

  // tree
  auto* tree_cmd = app.add_subcommand("tree", "Tree utilities");
  tree_cmd->require_subcommand(1);
  std::string tree_file, tree_mode = "auto";
  bool dump = false;
  auto* tree_stats = tree_cmd->add_subcommand("stats", "Summarise a Newick tree");
  tree_stats->add_option("FILE", tree_file)->required();
  tree_stats->add_option("--mode", tree_mode)->check(CLI::IsMember({"auto", "rooted", "unrooted"}));
  tree_stats->add_flag("--dump", dump, "Include the node/edge structure");
  std::string family;
  int gen_size = 0;
  auto* tree_gen = tree_cmd->add_subcommand("generate", "Generate a tree from a family");
  tree_gen->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"random", "random-rooted", "caterpillar", "comb", "degree3", "lower-bound"}));
  tree_gen->add_option("--size", gen_size)->required();

  // convex
  auto* convex_cmd = app.add_subcommand("convex", "Convex characters");
  convex_cmd->require_subcommand(1);
  std::string convex_file;
  int min_size = 1;
  bool exact = false;
  long long limit = -1;
  std::string offset = "0";
  auto* convex_count = convex_cmd->add_subcommand("count", "Count convex characters");
  convex_count->add_option("FILE", convex_file)->required();
  convex_count->add_option("--min-size", min_size);
  convex_count->add_flag("--exact", exact, "Count characters with exactly --min-size states");
  auto* convex_enum = convex_cmd->add_subcommand("enum", "Enumerate convex characters as JSON lines");
  convex_enum->add_option("FILE", convex_file)->required();
  convex_enum->add_option("--min-size", min_size);
  convex_enum->add_option("--limit", limit);
  convex_enum->add_option("--offset", offset);

  // maf
  std::vector<std::string> pair_files;
  bool rooted = false;
  std::string maf_mode = "hybrid";
  double c_value = -1, base = -1;
  auto* maf_cmd = app.add_subcommand("maf", "Maximum agreement forest");
  maf_cmd->add_option("FILES", pair_files)->required()->expected(2);
  maf_cmd->add_flag("--rooted", rooted);
  maf_cmd->add_option("--mode", maf_mode)->check(CLI::IsMember({"hybrid", "enum", "brute"}));
  maf_cmd->add_option("--c", c_value, "Tipping point fraction in (0, 1]");
  maf_cmd->add_option("--base", base, "Derive c from an FPT branching base");

  // mp2
  std::string mp2_mode = "legal";
  auto* mp2_cmd = app.add_subcommand("mp2", "Two-state maximum parsimony distance");
  mp2_cmd->add_option("FILES", pair_files)->required()->expected(2);
  mp2_cmd->add_option("--mode", mp2_mode)->check(CLI::IsMember({"legal", "all", "fully-legal", "brute"}));

  // matchings
  std::string match_file, match_kind = "legal", k_text = "inf";
  bool do_count = false, do_enum = false;
  auto* match_cmd = app.add_subcommand("matchings", "Matchings of a tree's core tree");
  match_cmd->add_option("FILE", match_file)->required();
  match_cmd->add_option("--kind", match_kind)->check(CLI::IsMember({"all", "legal", "k-legal"}));
  match_cmd->add_option("--k", k_text, "k for --kind k-legal (integer or inf)");
  match_cmd->add_flag("--count", do_count);
  match_cmd->add_flag("--enum", do_enum);
  match_cmd->add_option("--limit", limit);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Computer-assisted checks");
  verify_cmd->require_subcommand(1);
  double tol = 1e-9;
  std::string report_path;
  auto* verify_s = verify_cmd->add_subcommand("set-s", "Closure of the 62-vector bound set");
  verify_s->add_option("--tol", tol);
  verify_s->add_option("--report", report_path, "Write per-pair results to this JSON file");
  auto* verify_c = verify_cmd->add_subcommand("appendix-c", "Lower-bound transfer matrix");

  auto* constants_cmd = app.add_subcommand("constants", "Growth constants and tipping points");
  auto* selftest_cmd = app.add_subcommand("selftest", "Cross-check all modules against oracles");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (seed_flag >= 0) {
    ctx.seed = static_cast<std::uint64_t>(seed_flag);
  } else if (const char* env = std::getenv("CONVEXFOREST_SEED")) {
    ctx.seed = std::strtoull(env, nullptr, 10);
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  auto emit = [&](const std::string& command, json output) {
    out << Envelope(command, ctx, std::move(output), elapsed()).dump() << '\n';
  };

  try {
    if (tree_stats->parsed()) {
      const NewickMode mode = tree_mode == "rooted" ? NewickMode::kRooted
                              : tree_mode == "unrooted" ? NewickMode::kUnrooted
                                                        : NewickMode::kAuto;
      const PhyloTree t = LoadTree(ctx, tree_file, mode);
      json o{{"taxa", t.taxon_count()},
             {"nodes", t.node_count()},
             {"edges", t.edge_count()},
             {"rooted", t.rooted()},
             {"newick", SerializeNewick(t)}};
      if (t.taxon_count() >= 4) {
        const CoreTree core = MakeCoreTree(t);
        json weights = json::array();
        for (NodeId v = 0; v < core.node_count(); ++v) weights.push_back(core.weight(v));
        o["core"] = {{"nodes", core.node_count()}, {"weights", weights}};
      }
      if (dump) o["tree"] = ToJson(t);
      emit("tree stats", o);
    } else if (tree_gen->parsed()) {
      const Generated g = Generate(ParseFamily(family), gen_size, ctx.seed);
      json o{{"family", family}, {"size", gen_size}};
      if (const auto* t = std::get_if<PhyloTree>(&g)) {
        o["newick"] = SerializeNewick(*t);
      } else {
        const CoreTree& core = std::get<CoreTree>(g);
        json edges = json::array();
        for (const Edge& e : core.edges()) edges.push_back({e.u, e.v});
        o["nodes"] = core.node_count();
        o["edges"] = edges;
        o["good"] = IsGoodTree(core);
      }
      emit("tree generate", o);
    } else if (convex_count->parsed()) {
      const PhyloTree t = LoadTree(ctx, convex_file, NewickMode::kAuto);
      const ConvexCounter counter(t);
      const CountMode mode = exact ? CountMode::kExact : CountMode::kAtLeast;
      const int n = t.taxon_count();
      const BigInt closed = exact ? SteelCount(n, min_size) : SteelTail(n, min_size);
      emit("convex count", {{"taxa", n},
                            {"min_size", min_size},
                            {"mode", exact ? "exact" : "at_least"},
                            {"count", Str(counter.Count(min_size, mode))},
                            {"closed_form", Str(closed)}});
    } else if (convex_enum->parsed()) {
      const PhyloTree t = LoadTree(ctx, convex_file, NewickMode::kAuto);
      const ConvexCounter counter(t);
      BigInt start_at;
      try {
        start_at = BigInt(offset);
      } catch (const std::exception&) {
        throw DomainError("offset must be a nonnegative integer");
      }
      counter.Enumerate(min_size, start_at, limit, [&](const Character& c) {
        out << Blocks(c, t.taxa()).dump() << '\n';
        return true;
      });
    } else if (maf_cmd->parsed()) {
      const NewickMode mode = rooted ? NewickMode::kRooted : NewickMode::kAuto;
      const PhyloTree t1 = LoadTree(ctx, pair_files[0], mode);
      const PhyloTree t2 = LoadTree(ctx, pair_files[1], mode);
      double c = c_value;
      if (base > 0) c = SolveTippingPoint(base).c;
      if (c < 0) c = rooted ? kRootedTippingPoint : kUnrootedTippingPoint;
      HybridResult r;
      std::vector<std::string> labels = t1.taxa();
      if (rooted) labels.push_back(kRootTaxon);
      if (maf_mode == "brute") {
        std::optional<AgreementForest> best;
        const int n = static_cast<int>(labels.size());
        oracle::ForEachPartition(n, [&](const Character& p) {
          if (best && (p.block_count() > best->size ||
                       (p.block_count() == best->size && !(p < best->partition))))
            return;
          AgreementForest af = rooted ? IsRootedAgreementForest(t1, t2, p) : IsAgreementForest(t1, t2, p);
          if (af.valid) best = std::move(af);
        });
        r.forest = *best;
        r.mode_used = "brute";
      } else if (rooted) {
        r = Rmaf(t1, t2, maf_mode == "enum" ? RmafMode::kEnumerate : RmafMode::kHybrid, c, ctx.jobs);
      } else if (maf_mode == "enum") {
        r.forest = MafEnumerate(t1, t2, 1, ctx.jobs);
        r.mode_used = "enumeration";
      } else {
        r = MafHybrid(t1, t2, c, ctx.jobs);
      }
      emit("maf", {{"size", r.forest.size},
                   {"blocks", Blocks(r.forest.partition, labels)},
                   {"mode_used", r.mode_used},
                   {"k_tried", r.k_tried},
                   {"rooted", rooted},
                   {"c", Sig10(c)}});
    } else if (mp2_cmd->parsed()) {
      const PhyloTree t1 = LoadTree(ctx, pair_files[0], NewickMode::kAuto);
      const PhyloTree t2 = LoadTree(ctx, pair_files[1], NewickMode::kAuto);
      const Mp2Result r = Mp2Distance(t1, t2, ParseMp2Mode(mp2_mode), ctx.jobs);
      json red = json::array();
      for (TaxonId t : r.witness.block(0)) red.push_back(t1.taxa()[t]);
      emit("mp2", {{"distance", r.distance},
                   {"witness_red_block", red},
                   {"scores", {r.score1, r.score2}},
                   {"direction", r.direction},
                   {"matchings_examined", Str(r.matchings_examined)},
                   {"mode", ToString(r.mode)}});
    } else if (match_cmd->parsed()) {
      const PhyloTree t = Unroot(LoadTree(ctx, match_file, NewickMode::kAuto));
      const CoreTree core = MakeCoreTree(t);
      std::optional<int> k;
      if (match_kind == "k-legal" && k_text != "inf") {
        try {
          k = std::stoi(k_text);
        } catch (const std::exception&) {
          throw DomainError("--k must be an integer or 'inf'");
        }
        if (*k < 2) throw DomainError("--k must be at least 2");
      }
      const MatchingIndex index(core, match_kind == "all" ? MatchingKind::kAll : MatchingKind::kLegal);
      const BigInt total = index.Count();
      auto keep = [&](const Matching& m) { return match_kind != "k-legal" || IsKLegal(core, m, k); };
      if (do_enum) {
        long long emitted = 0;
        for (BigInt i = 0; i < total && (limit < 0 || emitted < limit); ++i) {
          const Matching m = index.Unrank(i);
          if (!keep(m)) continue;
          json edges = json::array();
          for (EdgeId e : m.edges) edges.push_back({core.edge(e).u, core.edge(e).v});
          out << json{{"edges", edges}, {"character", Blocks(CharacterOfMatching(t, core, m), t.taxa())}}.dump()
              << '\n';
          ++emitted;
        }
      } else {
        BigInt count = total;
        if (match_kind == "k-legal") {
          count = 0;
          for (BigInt i = 0; i < total; ++i) count += keep(index.Unrank(i));
        }
        emit("matchings", {{"kind", match_kind},
                           {"k", match_kind == "k-legal" ? json(k_text) : json(nullptr)},
                           {"core_nodes", core.node_count()},
                           {"count", Str(count)}});
      }
    } else if (verify_s->parsed()) {
      const SetSReport r = VerifySetS(Real(tol), ctx.jobs);
      json tight = json::array();
      for (const PairCheck& p : r.tight) tight.push_back({{"pair", {p.i, p.j}}, {"slack", Sig10(p.slack)}});
      if (!report_path.empty()) {
        json pairs = json::array();
        for (const PairCheck& p : r.pairs)
          pairs.push_back({{"pair", {p.i, p.j}}, {"status", ToString(p.status)}, {"slack", Sig10(p.slack)}});
        std::ofstream rep(report_path);
        if (!rep) throw DomainError("cannot write report '" + report_path + "'");
        rep << json{{"tol", tol}, {"property1", r.property1}, {"pairs", pairs}}.dump(1) << '\n';
      }
      emit("verify set-s", {{"checks", r.checks},
                            {"failures", r.failures},
                            {"property1", r.property1},
                            {"worst_slack", Sig10(r.worst_slack)},
                            {"worst_pair", {r.worst_i, r.worst_j}},
                            {"tight_pairs", tight},
                            {"tol", tol},
                            {"passed", r.passed()}});
      if (!r.passed()) return kExitVerificationFailed;
    } else if (verify_c->parsed()) {
      const LowerBoundReport r = VerifyLowerBound(5);
      json z = json::array();
      for (std::size_t k = 0; k < r.z_dp.size(); ++k)
        z.push_back({{"k", k}, {"z", Str(r.z_dp[k])}, {"z0", Str(r.z0_dp[k])}, {"z_matrix", Str(r.z_power[k])},
                     {"z0_matrix", Str(r.z0_power[k])}});
      const double alpha = static_cast<double>(r.alpha);
      emit("verify appendix-c",
           {{"matrix", json::array({json::array({Str(r.matrix[0][0]), Str(r.matrix[0][1])}),
                                  json::array({Str(r.matrix[1][0]), Str(r.matrix[1][1])})})},
            {"matrix_ok", r.matrix_ok},
            {"powers", z},
            {"powers_ok", r.powers_ok},
            {"eigenvalues", "13384 +- 8 sqrt(2793745)"},
            {"eigen_ok", r.eigen_ok},
            {"dominant_eigenvalue", Sig10(static_cast<double>(r.dominant_eigenvalue))},
            {"alpha", std::stod(RoundUp(alpha, 4))},
            {"alpha_precise", SigString(alpha)},
            {"passed", r.passed()}});
      if (!r.passed()) return kExitVerificationFailed;
    } else if (constants_cmd->parsed()) {
      const double alpha = static_cast<double>(Alpha());
      const CombConstants comb = SolveCombConstants(40);
      const TippingPoint u = SolveTippingPoint(3), r = SolveTippingPoint(2.42);
      auto fixed4 = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", x);
        return std::string(buf);
      };
      // Headline values at 4 d.p.; "precise" carries 10 significant digits as
      // strings so that the digits survive JSON number formatting.
      emit("constants", {{"alpha", std::stod(RoundUp(alpha, 4))},
                         {"rho", std::stod(fixed4(comb.rho))},
                         {"beta", std::stod(RoundUp(comb.beta, 4))},
                         {"c_umaf", std::stod(fixed4(u.c))},
                         {"c_rmaf", std::stod(fixed4(r.c))},
                         {"runtime_umaf", std::stod(RoundUp(u.runtime_base, 4))},
                         {"runtime_rmaf", std::stod(RoundUp(r.runtime_base, 4))},
                         {"precise",
                          {{"alpha", SigString(alpha)},
                           {"rho", SigString(comb.rho)},
                           {"beta", SigString(comb.beta)},
                           {"c_umaf", SigString(u.c)},
                           {"c_rmaf", SigString(r.c)},
                           {"runtime_umaf", SigString(u.runtime_base)},
                           {"runtime_rmaf", SigString(r.runtime_base)}}}});
    } else if (selftest_cmd->parsed()) {
      const auto checks = RunSelfTest(ctx.seed, ctx.jobs);
      json list = json::array();
      bool ok = true;
      for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        ok &= c.passed;
      }
      emit("selftest", {{"checks", list}, {"passed", ok}});
      if (!ok) return kExitVerificationFailed;
    }
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace convexforest
