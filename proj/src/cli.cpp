#include "dseq/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>

#include "CLI11.hpp"

#include "dseq/difference.hpp"
#include "dseq/duality.hpp"
#include "dseq/io.hpp"
#include "dseq/matclass.hpp"
#include "dseq/spaces.hpp"
#include "dseq/zmap.hpp"

namespace dseq::cli {
namespace {

using io::OJson;

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::converges: return kPositive;
    case Verdict::unbounded: return kNegative;
    case Verdict::inconclusive: break;
  }
  return kInconclusive;
}

int exit_for(DualVerdict v) {
  switch (v) {
    case DualVerdict::holds: return kPositive;
    case DualVerdict::fails: return kNegative;
    case DualVerdict::inconclusive: break;
  }
  return kInconclusive;
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::member: return kPositive;
    case Outcome::non_member: return kNegative;
    case Outcome::inconclusive: break;
  }
  return kInconclusive;
}

Window parse_window(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("window must be M,N: '" + text + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    Index m = std::stoll(text.substr(0, comma), &p1);
    Index n = std::stoll(text.substr(comma + 1), &p2);
    if (p1 != comma || p2 != text.size() - comma - 1) throw std::invalid_argument(text);
    return Window(m, n);
  } catch (const std::logic_error&) {
    throw InvalidArgument("window must be M,N: '" + text + "'");
  }
}

DoubleSequence load_sequence(const std::string& arg, const char* what) {
  return io::sequence_from_json(io::parse(io::read_argument(arg), what));
}

FourDimMatrix load_matrix(const std::string& arg) {
  return io::matrix_from_json(io::parse(io::read_argument(arg), "--matrix"));
}

/// Config flags shared by every subcommand; unset flags leave the loaded
/// config untouched.
struct ConfigFlags {
  std::string config_path;
  double tol = 0, growth_factor = 0, bound_slack = 0;
  Index fringe = 0, prefix_p = 0;
  std::uint64_t cell_cap = 0;
  std::vector<Index> schedule, matrix_schedule;
  CLI::Option *o_config = nullptr, *o_tol = nullptr, *o_growth = nullptr, *o_slack = nullptr, *o_fringe = nullptr,
              *o_prefix = nullptr, *o_cap = nullptr, *o_sched = nullptr, *o_msched = nullptr;

  void attach(CLI::App& app) {
    o_config = app.add_option("--config", config_path, "JSON config file (overrides DSEQ_CONFIG)");
    o_tol = app.add_option("--tol", tol, "Convergence tolerance");
    o_growth = app.add_option("--growth-factor", growth_factor, "Sup ratio counted as unbounded growth");
    o_slack = app.add_option("--bound-slack", bound_slack, "Relative sup increase still counted as bounded");
    o_fringe = app.add_option("--fringe", fringe, "Rows and columns checked for regular convergence");
    o_prefix = app.add_option("--prefix-p", prefix_p, "Entrywise matrix conditions cover [0..P]^2");
    o_cap = app.add_option("--cell-cap", cell_cap, "Largest window size in cells");
    o_sched = app.add_option("--schedule", schedule, "Window sides, e.g. 8,16,32")->delimiter(',');
    o_msched = app.add_option("--matrix-schedule", matrix_schedule, "Row window sides for batteries")->delimiter(',');
  }

  RunConfig resolve() const {
    RunConfig cfg;
    std::string path;
    if (const char* env = std::getenv("DSEQ_CONFIG"); env && *env) path = env;
    if (o_config->count()) path = config_path;
    if (!path.empty()) cfg = io::config_from_json(io::parse(io::read_argument("@" + path), "config file"));
    if (o_tol->count()) cfg.tol = tol;
    if (o_growth->count()) cfg.growth_factor = growth_factor;
    if (o_slack->count()) cfg.bound_slack = bound_slack;
    if (o_fringe->count()) cfg.fringe = fringe;
    if (o_prefix->count()) cfg.prefix_p = prefix_p;
    if (o_cap->count()) cfg.cell_cap = cell_cap;
    if (o_sched->count()) cfg.schedule_sides = schedule;
    if (o_msched->count()) cfg.matrix_sides = matrix_schedule;
    cfg.validate();
    return cfg;
  }
};

struct Result {
  OJson body;
  int code = kPositive;
};

OJson merged(const char* command, const OJson& fields) {
  OJson out;
  out["schema"] = "dseq/1";
  out["command"] = command;
  for (const auto& [k, v] : fields.items()) out[k] = v;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double-sequence difference spaces, convergence certifiers and matrix batteries", "dseq"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");
  ConfigFlags flags;
  flags.attach(app);

  std::string seq_arg, matrix_arg, a_arg, x_arg, window_arg, rule_arg = "p", space_arg, check_arg, class_arg,
                                                            v_arg = "r", kind_arg, id_arg;
  Index m = 0, n = 0, inv = 0, count = 0, index = 0;
  double q = 1.0;
  bool run_all = false, zero_based = false;

  std::function<Result(const RunConfig&)> action;

  auto rule_check = CLI::IsMember({"p", "bp", "r"});

  auto* eval = app.add_subcommand("eval", "Evaluate a sequence at a point or over a window");
  eval->add_option("--seq", seq_arg, "Sequence JSON or @path")->required();
  auto* eval_m = eval->add_option("--m", m, "Row index");
  auto* eval_n = eval->add_option("--n", n, "Column index");
  eval->add_option("--window", window_arg, "Window M,N");
  eval_m->needs(eval_n);
  eval_n->needs(eval_m);
  eval->callback([&] {
    action = [&, eval_m](const RunConfig& cfg) {
      DoubleSequence x = load_sequence(seq_arg, "--seq");
      OJson o;
      o["value_kind"] = x.exact() ? "exact_integer" : "floating";
      if (eval_m->count()) {
        o["at"] = OJson::array({m, n});
        o["value"] = x.exact() ? OJson(x.at_exact(m, n)) : OJson(x.at(m, n));
      } else {
        Window w = parse_window(window_arg.empty() ? "7,7" : window_arg);
        o["window"] = io::to_json(w);
        o["table"] = io::table_json(x, w, cfg.cell_cap);
      }
      return Result{merged("eval", o)};
    };
  });

  auto transform_cmd = [&](const char* name, const char* help, DoubleSequence (*fn)(const DoubleSequence&)) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("--seq", seq_arg, "Sequence JSON or @path")->required();
    sc->add_option("--window", window_arg, "Window M,N (default 7,7)");
    sc->callback([&, name, fn] {
      action = [&, name, fn](const RunConfig& cfg) {
        DoubleSequence y = fn(load_sequence(seq_arg, "--seq"));
        Window w = parse_window(window_arg.empty() ? "7,7" : window_arg);
        OJson o;
        o["value_kind"] = y.exact() ? "exact_integer" : "floating";
        o["window"] = io::to_json(w);
        o["table"] = io::table_json(y, w, cfg.cell_cap);
        o["sequence"] = io::sequence_to_json(y);
        return Result{merged(name, o)};
      };
    });
  };
  transform_cmd("delta", "Mixed first difference of a sequence", &delta);
  transform_cmd("invdelta", "Rectangular prefix sums of a sequence", &inv_delta);

  auto* matapply = app.add_subcommand("matapply", "Apply a four-dimensional matrix to a sequence");
  matapply->add_option("--matrix", matrix_arg, "Matrix JSON or @path")->required();
  matapply->add_option("--seq", seq_arg, "Sequence JSON or @path")->required();
  matapply->add_option("--rule", rule_arg, "Summation rule p|bp|r")->check(rule_check);
  matapply->add_option("--window", window_arg, "Rows M,N (default 7,7)");
  matapply->callback([&] {
    action = [&](const RunConfig& cfg) {
      FourDimMatrix a = load_matrix(matrix_arg);
      DoubleSequence x = load_sequence(seq_arg, "--seq");
      Window w = parse_window(window_arg.empty() ? "7,7" : window_arg);
      MatApplyResult r = apply_4d(a, x, parse_rule(rule_arg), w, cfg.schedule(), cfg);
      OJson table = OJson::array();
      for (Index i = 0; i < r.values.rows(); ++i) {
        OJson row = OJson::array();
        for (double v : r.values.row(i)) row.push_back(std::isnan(v) ? OJson(nullptr) : OJson(v));
        table.push_back(std::move(row));
      }
      OJson rows = OJson::array();
      bool any_unbounded = false, any_open = false;
      for (const auto& rr : r.rows) {
        OJson o;
        o["row"] = OJson::array({rr.row.m, rr.row.n});
        o["verdict"] = std::string(to_string(rr.report.verdict));
        o["value"] = rr.report.converges() ? OJson(rr.report.limit) : OJson(nullptr);
        o["exact"] = rr.report.exact;
        rows.push_back(std::move(o));
        any_unbounded = any_unbounded || rr.report.verdict == Verdict::unbounded;
        any_open = any_open || rr.report.verdict == Verdict::inconclusive;
      }
      OJson o;
      o["rule"] = rule_arg;
      o["window"] = io::to_json(w);
      o["table"] = std::move(table);
      o["rows"] = std::move(rows);
      return Result{merged("matapply", o), any_unbounded ? kNegative : any_open ? kInconclusive : kPositive};
    };
  });

  auto* limit = app.add_subcommand("limit", "Certify the p, bp or r limit of a sequence");
  limit->add_option("--rule", rule_arg, "Convergence rule p|bp|r")->required()->check(rule_check);
  limit->add_option("--seq", seq_arg, "Sequence JSON or @path")->required();
  limit->callback([&] {
    action = [&](const RunConfig& cfg) {
      ConvergenceReport r = rule_limit(load_sequence(seq_arg, "--seq"), parse_rule(rule_arg), cfg.schedule(), cfg);
      return Result{merged("limit", io::to_json(r)), exit_for(r.verdict)};
    };
  });

  auto* norm = app.add_subcommand("norm", "Norm of the difference transform");
  norm->add_option("--kind", kind_arg, "sup_delta|lq_delta")->required()->check(CLI::IsMember({"sup_delta", "lq_delta"}));
  norm->add_option("--q", q, "Exponent for lq_delta (default 1)");
  norm->add_option("--seq", seq_arg, "Sequence JSON or @path")->required();
  norm->callback([&] {
    action = [&](const RunConfig& cfg) {
      DoubleSequence x = load_sequence(seq_arg, "--seq");
      ConvergenceReport r = kind_arg == "sup_delta" ? sup_norm_delta(x, cfg.schedule(), cfg)
                                                    : lq_norm_delta(x, q, cfg.schedule(), cfg);
      OJson o;
      o["kind"] = kind_arg;
      o["q"] = kind_arg == "lq_delta" ? OJson(q) : OJson(nullptr);
      o["norm"] = r.converges() ? OJson(r.limit) : OJson(nullptr);
      OJson report = io::to_json(r);
      for (const auto& [k, v] : report.items()) o[k] = v;
      return Result{merged("norm", o), exit_for(r.verdict)};
    };
  });

  auto* mem = app.add_subcommand("member", "Certify membership of a sequence in a space");
  mem->add_option("--space", space_arg, "Space id, e.g. Mu, Cp_d, Lq(2), BS, CSr")->required();
  mem->add_option("--seq", seq_arg, "Sequence JSON or @path")->required();
  mem->callback([&] {
    action = [&](const RunConfig& cfg) {
      SpaceId s = parse_space(space_arg);
      MembershipVerdict v = member(load_sequence(seq_arg, "--seq"), s, cfg);
      return Result{merged("member", io::to_json(v)), exit_for(v.outcome)};
    };
  });

  auto* atlas = app.add_subcommand("atlas", "Run registered inclusion witnesses");
  auto* atlas_all = atlas->add_flag("--run-all", run_all, "Run every registered inclusion");
  atlas->add_option("--id", id_arg, "Run one inclusion")->excludes(atlas_all);
  atlas->callback([&] {
    action = [&](const RunConfig& cfg) {
      OJson o;
      if (!run_all && id_arg.empty()) {
        OJson ids = OJson::array();
        for (const auto& id : inclusion_ids()) ids.push_back(OJson{{"id", id}, {"statement", witness(id).statement}});
        o["inclusions"] = std::move(ids);
        return Result{merged("atlas", o)};
      }
      std::vector<std::string> ids = run_all ? inclusion_ids() : std::vector<std::string>{id_arg};
      OJson rows = OJson::array();
      OJson text = OJson::array();
      int passed = 0, failed = 0;
      for (const auto& id : ids) {
        Witness w = witness(id);
        for (const auto& c : w.cases)
          for (const auto& [space, expected] : c.expected) {
            Outcome got = member(c.sequence, space, cfg).outcome;
            bool ok = got == expected;
            (ok ? passed : failed) += 1;
            OJson r;
            r["inclusion"] = id;
            r["case"] = c.label;
            r["space"] = to_string(space);
            r["expected"] = std::string(to_string(expected));
            r["observed"] = std::string(to_string(got));
            r["pass"] = ok;
            rows.push_back(std::move(r));
            text.push_back(std::string(ok ? "PASS " : "FAIL ") + id + " " + c.label + " " + to_string(space) + ": " +
                           std::string(to_string(got)));
          }
      }
      o["rows"] = std::move(rows);
      o["passed"] = passed;
      o["failed"] = failed;
      o["text"] = std::move(text);
      return Result{merged("atlas", o), failed == 0 ? kPositive : kNegative};
    };
  });

  auto* dual = app.add_subcommand("dual", "Dual-space conditions on a coefficient sequence");
  dual->add_option("--check", check_arg, "F1|F2|F3|alpha|Lu_abs")
      ->required()
      ->check(CLI::IsMember({"F1", "F2", "F3", "alpha", "Lu_abs"}));
  dual->add_option("--a", a_arg, "Coefficient sequence JSON or @path")->required();
  dual->add_option("--x", x_arg, "Paired sequence for alpha");
  dual->add_option("--index", index, "Fixed index j0 (F2) or i0 (F3), default 0");
  dual->callback([&] {
    action = [&](const RunConfig& cfg) {
      DoubleSequence a = load_sequence(a_arg, "--a");
      DualConditionReport r;
      if (check_arg == "F1") {
        r = check_F1(a, cfg);
      } else if (check_arg == "F2") {
        r = check_F2(a, index, cfg);
      } else if (check_arg == "F3") {
        r = check_F3(a, index, cfg);
      } else if (check_arg == "Lu_abs") {
        r = check_Lu_abs(a, cfg);
      } else {
        if (x_arg.empty()) throw InvalidArgument("--check alpha requires --x");
        r = as_condition("alpha", alpha_pairing_abs(a, load_sequence(x_arg, "--x"), cfg));
      }
      return Result{merged("dual", io::to_json(r)), exit_for(r.verdict)};
    };
  });

  auto* matclass = app.add_subcommand("matclass", "Run a matrix-class condition battery");
  matclass->add_option("--matrix", matrix_arg, "Matrix JSON or @path")->required();
  matclass->add_option("--class", class_arg, "Class id, e.g. Cr_to_Cr, Cp_to_Cv, domain")->required();
  matclass->add_option("--v", v_arg, "Target rule for *_to_Cv classes")->check(rule_check);
  matclass->callback([&] {
    action = [&](const RunConfig& cfg) {
      BatteryReport r = check_class(load_matrix(matrix_arg), parse_class(class_arg, parse_rule(v_arg)), cfg);
      return Result{merged("matclass", io::to_json(r)), exit_for(r.overall)};
    };
  });

  auto* phi_cmd = app.add_subcommand("phi", "Square-shell enumeration of index pairs");
  auto* phi_m = phi_cmd->add_option("--m", m, "Row index");
  auto* phi_n = phi_cmd->add_option("--n", n, "Column index");
  auto* phi_inv_opt = phi_cmd->add_option("--inv", inv, "Position to invert");
  phi_cmd->add_flag("--zero-based", zero_based, "Indices and positions start at 0");
  phi_m->needs(phi_n);
  phi_n->needs(phi_m);
  phi_inv_opt->excludes(phi_m)->excludes(phi_n);
  phi_cmd->callback([&, phi_inv_opt, phi_m] {
    action = [&, phi_inv_opt, phi_m](const RunConfig&) {
      OJson o;
      if (phi_inv_opt->count()) {
        auto [pm, pn] = zero_based ? phi_inv_zero_based(inv) : phi_inv(inv);
        o["m"] = pm;
        o["n"] = pn;
      } else if (phi_m->count()) {
        o["phi"] = zero_based ? phi_zero_based(m, n) : phi(m, n);
      } else {
        throw InvalidArgument("phi needs --m and --n, or --inv");
      }
      return Result{merged("phi", o)};
    };
  });

  auto* flat = app.add_subcommand("flatten", "Enumerate a double sequence along the square shells");
  flat->add_option("--seq", seq_arg, "Sequence JSON or @path")->required();
  flat->add_option("--count", count, "Number of terms")->required();
  flat->callback([&] {
    action = [&](const RunConfig&) {
      OJson o;
      o["values"] = flatten(load_sequence(seq_arg, "--seq"), count);
      return Result{merged("flatten", o)};
    };
  });

  std::vector<const char*> argv{"dseq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPositive;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << "dseq: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Result r = action(flags.resolve());
    out << (pretty ? r.body.dump(2) : r.body.dump()) << "\n";
    return r.code;
  } catch (const std::exception& e) {
    err << "dseq: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace dseq::cli
