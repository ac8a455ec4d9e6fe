#include "cli.hpp"

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsplit/avoidance.hpp"
#include "nsplit/bounds.hpp"
#include "nsplit/combinat.hpp"
#include "nsplit/core.hpp"
#include "nsplit/gadgets.hpp"
#include "nsplit/json_io.hpp"
#include "nsplit/measures.hpp"
#include "nsplit/solve1d.hpp"
#include "nsplit/solvend.hpp"
#include "nsplit/stringing.hpp"

namespace nsplit::cli {

namespace {

using nlohmann::json;

constexpr int kFound = 0;
constexpr int kUsage = 1;
constexpr int kNone = 2;
constexpr int kResource = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// --input values for 1-D necklaces may be a file path or the literal word.
std::string file_or_inline(const std::string& value) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(value, ec)) return slurp(value);
  return value;
}

std::string rational_str(const measures::Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

json assignment_json(const FamilyAssignment& a) {
  json out = json::array();
  for (std::uint8_t b : a) out.push_back(static_cast<int>(b));
  return out;
}

json solution_json(const SplitSolution& s, bool verified) {
  json j;
  j["cuts"] = s.cuts.cuts;
  j["assignment"] = assignment_json(s.assignment);
  j["metric_total"] = s.metric_total;
  if (verified) j["verified"] = true;
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void verify_grid_solution(const NecklaceGrid& g, const SplitSolution& s) {
  if (!is_fair(g, s.cuts, s.assignment))
    throw std::logic_error("verification failed: emitted splitting is not fair");
}

struct Global {
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  bool verify = false;
  std::string meta_path;
};

void write_meta(const Global& g, const std::vector<std::string>& args, int code,
                std::ostream& err) {
  if (g.meta_path.empty()) return;
  json m;
  m["argv"] = args;
  m["threads"] = g.threads;
  if (g.seed)
    m["seed"] = *g.seed;
  else
    m["seed"] = nullptr;
  m["exit_code"] = code;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m["timestamp"] = buf;
  std::ofstream f(g.meta_path, std::ios::binary);
  if (!f) {
    err << "cannot write metadata sidecar: " << g.meta_path << "\n";
    return;
  }
  f << m.dump(2) << "\n";
}

int cmd_solve1d(const std::string& input, bool want_min, int max_cuts, const Global& g,
                std::ostream& out) {
  const NecklaceGrid grid = io::parse_grid(file_or_inline(input));
  if (grid.dims().size() != 1)
    throw std::invalid_argument("solve1d expects a 1-D necklace");
  std::optional<SplitSolution> sol;
  bool impossible = false;
  if (want_min) {
    auto r = solve1d::min_cuts_fair(grid);
    if (r.status == SearchStatus::found) sol = r.solution;
    impossible = r.status == SearchStatus::impossible;
  } else {
    auto r = solve1d::exists_fair_with_cuts(grid, max_cuts);
    if (r.status == SearchStatus::found) sol = r.solution;
    impossible = r.status == SearchStatus::impossible;
  }
  if (sol) {
    if (g.verify) verify_grid_solution(grid, *sol);
    emit(out, solution_json(*sol, g.verify));
    return kFound;
  }
  emit(out, json(impossible ? "impossible" : "none"));
  return kNone;
}

int cmd_solvend(const std::string& input, const std::vector<int>& budgets, bool min_total,
                std::uint64_t max_splittings, const Global& g, std::ostream& out) {
  const NecklaceGrid grid = io::parse_grid(slurp(input));
  solvend::Options opts;
  opts.threads = g.threads;
  opts.max_splittings = max_splittings;
  std::optional<SplitSolution> sol;
  bool impossible = false;
  if (min_total) {
    auto r = solvend::min_total_lines(grid, opts);
    if (r.status == SearchStatus::found) sol = r.solution;
    impossible = r.status == SearchStatus::impossible;
  } else {
    if (budgets.size() != grid.dims().size())
      throw std::invalid_argument("--budgets needs one entry per axis");
    // caps: try allocations by total ascending, lexicographic within a total
    int cap_sum = 0;
    for (int b : budgets) {
      if (b < 0) throw std::invalid_argument("budgets must be nonnegative");
      cap_sum += b;
    }
    if (!grid.totals().all_even()) {
      impossible = true;
    } else {
      for (int total = 0; total <= cap_sum && !sol; ++total) {
        for (const auto& alloc : compositions_capped(total, budgets)) {
          auto r = solvend::exists_fair_budgets(grid, alloc, opts);
          if (r.status == SearchStatus::found) {
            sol = r.solution;
            break;
          }
        }
      }
    }
  }
  if (sol) {
    if (g.verify) verify_grid_solution(grid, *sol);
    emit(out, solution_json(*sol, g.verify));
    return kFound;
  }
  emit(out, json(impossible ? "impossible" : "none"));
  return kNone;
}

int cmd_string2d(const std::string& input, const Global& g, std::ostream& out) {
  const NecklaceGrid grid = io::parse_grid(slurp(input));
  if (grid.dims().size() != 2)
    throw std::invalid_argument("string2d expects a 2-D necklace");
  auto r = stringing::split_via_stringing(grid);
  if (r.status != SearchStatus::found) {
    emit(out, json("impossible"));
    return kNone;
  }
  if (g.verify && !is_fair(grid, r.lines, r.assignment))
    throw std::logic_error("verification failed: lifted splitting is not fair");
  const NecklaceGrid snake = stringing::snake_order(grid).first;
  json j;
  j["snake"] = snake.cells();
  j["cuts1d"] = r.snake_cuts;
  j["lines"] = r.lines.cuts;
  j["assignment"] = assignment_json(r.assignment);
  j["lines_used"] = r.lines_used;
  j["bound_3k"] = 3 * grid.palette();
  if (g.verify) j["verified"] = true;
  emit(out, j);
  return kFound;
}

int cmd_certify(const std::string& points_path, int max_lines, std::uint64_t max_splittings,
                const Global& g, std::ostream& out) {
  const PointSet ps = io::parse_point_set(slurp(points_path));
  gadgets::CertifyOptions opts;
  opts.threads = g.threads;
  opts.max_splittings = max_splittings;
  auto r = gadgets::certify_min_lines(ps, max_lines, opts);
  json j;
  j["certified"] = r.certified;
  if (r.certified) {
    const auto& c = *r.certificate;
    json cert;
    cert["max_lines"] = c.max_lines;
    cert["candidates"] = c.candidates;
    cert["allocations_checked"] = c.allocations_checked;
    cert["splittings_checked"] = c.splittings_checked;
    cert["assignment_nodes"] = c.assignment_nodes;
    cert["assignment_leaves"] = c.assignment_leaves;
    j["certificate"] = std::move(cert);
    emit(out, j);
    return kNone;
  }
  const auto& cx = *r.counterexample;
  if (g.verify) {
    if (!solvend::is_fair_points(ps, cx.cuts, cx.assignment))
      throw std::logic_error("verification failed: counterexample is not fair");
    j["verified"] = true;
  }
  json k;
  k["cuts"] = cx.cuts.cuts;
  k["assignment"] = assignment_json(cx.assignment);
  k["total_lines"] = cx.total_lines;
  j["counterexample"] = std::move(k);
  emit(out, j);
  return kFound;
}

int cmd_gadget_search(int box, int max_points, int target, std::uint64_t max_splittings,
                      const Global& g, std::ostream& out) {
  gadgets::SearchOptions opts;
  opts.threads = g.threads;
  opts.max_splittings_per_certify = max_splittings;
  auto found = gadgets::search_gadget(box, max_points, target, opts);
  if (!found) {
    emit(out, json("exhausted"));
    return kNone;
  }
  out << io::point_set_json(*found);
  return kFound;
}

int cmd_compose(const std::string& gadget_path, int k, std::ostream& out) {
  const PointSet gadget = io::parse_point_set(slurp(gadget_path));
  out << io::point_set_json(gadgets::compose_far_apart(gadget, k));
  return kFound;
}

int cmd_avoid(int k, int t, int d, int limit, bool exhaust, const std::vector<int>& order,
              bool no_symmetry, std::uint64_t max_nodes, std::ostream& out) {
  avoidance::Options opts;
  opts.color_order = order;
  opts.symmetry_breaking = !no_symmetry;
  opts.max_nodes = max_nodes;
  if (exhaust && limit <= 0) limit = 10'000;
  if (limit <= 0) limit = 32;
  auto run = avoidance::backtrack_search(k, t, d, limit, opts);
  json j;
  j["k"] = run.k;
  j["t"] = run.t;
  j["d"] = run.d;
  j["limit"] = run.limit;
  j["side"] = run.side;
  j["depth_reached"] = run.depth_reached;
  j["exhausted"] = run.exhausted;
  j["nodes"] = run.nodes;
  j["witness"] = run.witness;
  emit(out, j);
  return run.exhausted ? kNone : kFound;
}

int cmd_bounds(int d_max, int t_max, std::ostream& out) {
  if (d_max < 1 || t_max < 1) throw std::invalid_argument("--d-max and --t-max must be >= 1");
  json rows = json::array();
  bool all_agree = true;
  for (int d = 1; d <= d_max; ++d)
    for (int t = 1; t <= t_max; ++t) {
      const std::int64_t dv = d_value(d, t);
      const std::int64_t dc = d_closed_form(d, t);
      json row;
      row["d"] = d;
      row["t"] = t;
      row["f"] = f_bound(d, t);
      row["d_value"] = dv;
      row["d_closed_form"] = dc;
      row["agree"] = dv == dc;
      all_agree = all_agree && dv == dc;
      rows.push_back(std::move(row));
    }
  json j;
  j["rows"] = std::move(rows);
  emit(out, j);
  return all_agree ? kFound : kNone;
}

int cmd_construct(int d, int t, int N, int k, std::uint64_t max_splittings, std::ostream& out) {
  const auto col = measures::build_construction(d, t, N, k);
  measures::CheckOptions opts;
  opts.max_splittings = max_splittings;
  auto r = measures::check_no_fair_on_grid(col, t, opts);

  json cons;
  cons["d"] = col.d;
  cons["t"] = col.t;
  cons["N"] = col.N;
  cons["k"] = col.k;
  cons["delta"] = rational_str(col.delta);
  cons["palette"] = col.palette;
  json cells = json::array();
  for (const auto& cell : col.cells) {
    json regs = json::array();
    for (const auto& reg : cell) {
      json rj;
      rj["color"] = reg.color;
      rj["measure"] = reg.measure.str();
      regs.push_back(std::move(rj));
    }
    cells.push_back(std::move(regs));
  }
  cons["cells"] = std::move(cells);
  cons["candidate_boundaries"] = col.candidate_boundaries;
  cons["background_colors"] = col.background_colors;

  json j;
  j["construction"] = std::move(cons);
  j["d_bound"] = d_value(d, t);
  json check;
  check["certified"] = r.certified;
  if (r.certified) {
    const auto& c = *r.certificate;
    json cert;
    cert["candidate_count"] = c.candidate_count;
    cert["splittings_checked"] = c.splittings_checked;
    cert["assignments_checked"] = c.assignments_checked;
    cert["conservation_ok"] = c.conservation_ok;
    cert["all_failures_m_witnessed"] = c.all_failures_m_witnessed;
    cert["witness_counts"] = c.witness_counts;
    json ex = json::array();
    for (const auto& w : c.exemplars) {
      json wj;
      wj["color"] = w.color;
      wj["symbol"] = w.symbol;
      wj["coefficient"] = rational_str(w.coefficient);
      wj["m_witnessed"] = w.m_witnessed;
      ex.push_back(std::move(wj));
    }
    cert["exemplars"] = std::move(ex);
    cert["alpha_span_count"] = c.alpha_span_count;
    cert["alpha_within_bound"] = c.alpha_span_count <= d_value(d, t);
    check["certificate"] = std::move(cert);
  } else {
    check["counterexample"] = solution_json(*r.counterexample, false);
  }
  j["check"] = std::move(check);
  emit(out, j);
  return r.certified ? kNone : kFound;
}

unsigned env_threads() {
  const char* v = std::getenv("NSPLIT_THREADS");
  if (!v) return 1;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (end == v || *end != '\0' || n == 0 || n > 1024) return 1;
  return static_cast<unsigned>(n);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact solvers, certifiers, and searches for discrete necklace splitting"};
  app.name("nsplit");
  app.require_subcommand(1);

  Global g;
  g.threads = env_threads();
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value,
                                  "seed for any randomized search order (recorded in metadata)");
  app.add_option("--threads", g.threads, "worker threads (default: NSPLIT_THREADS or 1)");
  app.add_flag("--verify", g.verify, "re-verify every emitted splitting before printing");
  app.add_option("--meta", g.meta_path, "write run metadata (argv, seed, timestamp) to this file");

  // solve1d
  std::string s1_input;
  int s1_max_cuts = -1;
  bool s1_min = false;
  auto* s1 = app.add_subcommand("solve1d", "fair splitting of a 1-D necklace");
  s1->fallthrough();
  s1->add_option("--input", s1_input, "necklace file, JSON, or word like \"aabb\"")->required();
  auto* s1_cuts_opt = s1->add_option("--max-cuts", s1_max_cuts, "cut budget t");
  auto* s1_min_opt = s1->add_flag("--min", s1_min, "minimize the number of cuts");
  s1_cuts_opt->excludes(s1_min_opt);
  s1_min_opt->excludes(s1_cuts_opt);

  // solvend
  std::string snd_input;
  std::vector<int> snd_budgets;
  bool snd_min_total = false;
  std::uint64_t snd_budget = 50'000'000;
  auto* snd = app.add_subcommand("solvend", "fair splitting of a d-dimensional grid necklace");
  snd->fallthrough();
  snd->add_option("--input", snd_input, "grid JSON file")->required();
  auto* snd_b = snd->add_option("--budgets", snd_budgets, "per-axis cut budgets r1,..,rd")
                    ->delimiter(',');
  auto* snd_m = snd->add_flag("--min-total", snd_min_total, "minimize total line count");
  snd_b->excludes(snd_m);
  snd_m->excludes(snd_b);
  snd->add_option("--max-splittings", snd_budget, "enumeration budget before resource exit");

  // string2d
  std::string st_input;
  auto* st = app.add_subcommand("string2d", "snake stringing pipeline for 2-D grids");
  st->fallthrough();
  st->add_option("--input", st_input, "grid JSON file")->required();

  // certify
  std::string ce_points;
  int ce_max_lines = 0;
  std::uint64_t ce_budget = 50'000'000;
  auto* ce = app.add_subcommand("certify", "certify a minimum fair-splitting line count");
  ce->fallthrough();
  ce->add_option("--points", ce_points, "point set JSON file")->required();
  ce->add_option("--max-lines", ce_max_lines, "certify that no fair splitting uses <= this")
      ->required();
  ce->add_option("--max-splittings", ce_budget, "enumeration budget before resource exit");

  // gadget-search
  int gs_box = 0, gs_points = 0, gs_target = 0;
  std::uint64_t gs_budget = 50'000'000;
  auto* gs = app.add_subcommand("gadget-search", "search for a certified lower-bound gadget");
  gs->fallthrough();
  gs->add_option("--box", gs_box, "bounding box side")->required();
  gs->add_option("--points", gs_points, "maximum point count")->required();
  gs->add_option("--target", gs_target, "required minimum line count")->required();
  gs->add_option("--max-splittings", gs_budget, "per-certification enumeration budget");

  // compose
  std::string co_gadget;
  int co_k = 0;
  auto* co = app.add_subcommand("compose", "compose far-apart recolored copies of a gadget");
  co->fallthrough();
  co->add_option("--gadget", co_gadget, "gadget point set JSON file")->required();
  co->add_option("--k", co_k, "palette size; emits k-1 copies plus a color-0 anchor pair")
      ->required();

  // avoid
  int av_k = 0, av_t = 0, av_d = 1, av_limit = 0;
  bool av_exhaust = false, av_nosym = false;
  std::vector<int> av_order;
  std::uint64_t av_nodes = std::numeric_limits<std::uint64_t>::max();
  auto* av = app.add_subcommand("avoid", "backtracking search for bad-interval-free colorings");
  av->fallthrough();
  av->add_option("--k", av_k, "colors")->required();
  av->add_option("--t", av_t, "cut budget that must fail everywhere")->required();
  av->add_option("--d", av_d, "dimension (1 or 2)")->required();
  av->add_option("--limit", av_limit, "stop after a witness of this size (default 32)");
  av->add_flag("--exhaust", av_exhaust, "run until the tree is exhausted (limit 10000)");
  av->add_option("--order", av_order, "branch order over colors, e.g. 2,0,1")->delimiter(',');
  av->add_flag("--no-symmetry-breaking", av_nosym, "disable first-occurrence ordering");
  av->add_option("--max-nodes", av_nodes, "node budget before resource exit");

  // bounds
  int bo_d = 0, bo_t = 0;
  auto* bo = app.add_subcommand("bounds", "tabulate the color-count and dimension bounds");
  bo->fallthrough();
  bo->add_option("--d-max", bo_d, "largest dimension")->required();
  bo->add_option("--t-max", bo_t, "largest cut budget")->required();

  // construct
  int cn_d = 1, cn_t = 1, cn_N = 2, cn_k = 2;
  std::uint64_t cn_budget = 10'000'000;
  auto* cn = app.add_subcommand("construct", "symbolic coloring with a no-fair-splitting check");
  cn->fallthrough();
  cn->add_option("--d", cn_d, "dimension (1 or 2)")->required();
  cn->add_option("--t", cn_t, "cut budget that must fail")->required();
  cn->add_option("--N", cn_N, "cells per axis")->required();
  cn->add_option("--k", cn_k, "independent colors")->required();
  cn->add_option("--max-splittings", cn_budget, "enumeration budget before resource exit");

  std::vector<std::string> argv_owned;
  argv_owned.reserve(args.size() + 1);
  argv_owned.push_back("nsplit");
  for (const auto& a : args) argv_owned.push_back(a);
  std::vector<const char*> argv;
  for (const auto& a : argv_owned) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  int code = kUsage;
  try {
    if (app.got_subcommand(s1)) {
      if (!s1_min && s1_cuts_opt->count() == 0)
        throw std::invalid_argument("solve1d needs --max-cuts or --min");
      code = cmd_solve1d(s1_input, s1_min, s1_max_cuts, g, out);
    } else if (app.got_subcommand(snd)) {
      if (!snd_min_total && snd_b->count() == 0)
        throw std::invalid_argument("solvend needs --budgets or --min-total");
      code = cmd_solvend(snd_input, snd_budgets, snd_min_total, snd_budget, g, out);
    }
    else if (app.got_subcommand(st))
      code = cmd_string2d(st_input, g, out);
    else if (app.got_subcommand(ce))
      code = cmd_certify(ce_points, ce_max_lines, ce_budget, g, out);
    else if (app.got_subcommand(gs))
      code = cmd_gadget_search(gs_box, gs_points, gs_target, gs_budget, g, out);
    else if (app.got_subcommand(co))
      code = cmd_compose(co_gadget, co_k, out);
    else if (app.got_subcommand(av))
      code = cmd_avoid(av_k, av_t, av_d, av_limit, av_exhaust, av_order, av_nosym, av_nodes, out);
    else if (app.got_subcommand(bo))
      code = cmd_bounds(bo_d, bo_t, out);
    else if (app.got_subcommand(cn))
      code = cmd_construct(cn_d, cn_t, cn_N, cn_k, cn_budget, out);
  } catch (const resource_error& e) {
    err << "resource budget exceeded: " << e.what() << "\n";
    code = kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kUsage;
  }
  write_meta(g, args, code, err);
  return code;
}

}  // namespace nsplit::cli
