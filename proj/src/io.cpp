#include "dseq/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dseq/difference.hpp"
#include "dseq/duality.hpp"
#include "dseq/matclass.hpp"

namespace dseq::io {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw InvalidArgument(msg); }

const Json& require(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) bad(std::string(where) + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) bad(what + ": expected a number");
  return j.get<double>();
}

Index integer(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<Index>();
  if (j.is_number_float()) {
    double d = j.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9.0e15) return static_cast<Index>(d);
  }
  bad(what + ": expected an integer");
}

Params params_from(const Json& j) {
  Params out;
  if (j.is_null()) return out;
  if (!j.is_object()) bad("params: expected an object");
  for (const auto& [k, v] : j.items()) out.emplace_back(k, number(v, "params." + k));
  return out;
}

OJson params_to(const Params& p) {
  OJson out = OJson::object();
  for (const auto& [k, v] : p) out[k] = v;
  return out;
}

Window window_from(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) bad(std::string(what) + ": expected [M, N]");
  return Window(integer(j[0], what), integer(j[1], what));
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const char* where) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) bad(std::string(where) + ": unknown key \"" + k + "\"");
  }
}

std::string kind_of(const Json& j, const char* where) {
  if (!j.is_object()) bad(std::string(where) + ": expected an object");
  const Json& k = require(j, "kind", where);
  if (!k.is_string()) bad(std::string(where) + ": \"kind\" must be a string");
  return k.get<std::string>();
}

std::vector<Index> sides_from(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + ": expected a nonempty array of sides");
  std::vector<Index> out;
  for (const auto& v : j) out.push_back(integer(v, what));
  return out;
}

OJson optional_number(std::optional<double> v) { return v ? OJson(*v) : OJson(nullptr); }

}  // namespace

Json parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad("malformed JSON in " + std::string(what) + ": " + e.what());
  }
}

std::string read_argument(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1), std::ios::binary);
  if (!in) bad("cannot read file '" + arg.substr(1) + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DoubleSequence sequence_from_json(const Json& j) {
  const std::string kind = kind_of(j, "sequence");
  if (kind == "closed_form") {
    only_keys(j, {"kind", "name", "params"}, "closed_form");
    const Json& name = require(j, "name", "closed_form");
    if (!name.is_string()) bad("closed_form: \"name\" must be a string");
    return catalog(name.get<std::string>(), params_from(j.value("params", Json())));
  }
  if (kind == "table") {
    only_keys(j, {"kind", "values", "default"}, "table");
    const Json& values = require(j, "values", "table");
    if (!values.is_array()) bad("table: \"values\" must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& row : values) {
      if (!row.is_array()) bad("table: each row must be an array");
      std::vector<double> r;
      for (const auto& v : row) r.push_back(number(v, "table.values"));
      rows.push_back(std::move(r));
    }
    double fill = j.contains("default") ? number(j["default"], "table.default") : 0.0;
    return table_sequence(rows, fill);
  }
  if (kind == "combinator") {
    only_keys(j, {"kind", "op", "params", "children"}, "combinator");
    const Json& op_name = require(j, "op", "combinator");
    if (!op_name.is_string()) bad("combinator: \"op\" must be a string");
    const std::string name = op_name.get<std::string>();
    auto op = difference_op(name);
    if (!op) op = pointwise_op(name, params_from(j.value("params", Json())));
    if (!op) bad("combinator: unknown op \"" + name + "\"");
    const Json& kids = require(j, "children", "combinator");
    if (!kids.is_array()) bad("combinator: \"children\" must be an array");
    std::vector<DoubleSequence> children;
    for (const auto& c : kids) children.push_back(sequence_from_json(c));
    return make_combinator(std::move(op), std::move(children));
  }
  bad("sequence: unknown kind \"" + kind + "\"");
}

OJson sequence_to_json(const DoubleSequence& x) {
  OJson out;
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, ClosedForm>) {
          out["kind"] = "closed_form";
          out["name"] = b.name;
          out["params"] = params_to(b.params);
        } else if constexpr (std::is_same_v<B, TableBody>) {
          out["kind"] = "table";
          OJson rows = OJson::array();
          for (Index m = 0; m < b.values.rows(); ++m) {
            OJson row = OJson::array();
            for (double v : b.values.row(m)) row.push_back(v);
            rows.push_back(std::move(row));
          }
          out["values"] = std::move(rows);
          out["default"] = b.fill;
        } else {
          out["kind"] = "combinator";
          out["op"] = std::string(b.op->name());
          out["params"] = params_to(b.op->params());
          OJson kids = OJson::array();
          for (const auto& c : b.children) kids.push_back(sequence_to_json(c));
          out["children"] = std::move(kids);
        }
      },
      x.body());
  return out;
}

FourDimMatrix matrix_from_json(const Json& j) {
  const std::string kind = kind_of(j, "matrix");
  if (kind == "builtin") {
    only_keys(j, {"kind", "name", "params"}, "builtin");
    const Json& name = require(j, "name", "builtin");
    if (!name.is_string()) bad("builtin: \"name\" must be a string");
    return builtin_matrix(name.get<std::string>(), params_from(j.value("params", Json())));
  }
  if (kind == "entries") {
    only_keys(j, {"kind", "entries"}, "entries");
    const Json& list = require(j, "entries", "entries");
    if (!list.is_array()) bad("entries: expected an array of [m,n,k,l,v]");
    std::vector<MatrixEntry> entries;
    for (const auto& e : list) {
      if (!e.is_array() || e.size() != 5) bad("entries: each entry must be [m,n,k,l,v]");
      entries.push_back({integer(e[0], "entries.m"), integer(e[1], "entries.n"), integer(e[2], "entries.k"),
                         integer(e[3], "entries.l"), number(e[4], "entries.v")});
    }
    return entries_matrix(entries);
  }
  if (kind == "b_matrix") {
    only_keys(j, {"kind", "a", "window"}, "b_matrix");
    return b_matrix(sequence_from_json(require(j, "a", "b_matrix")), window_from(require(j, "window", "b_matrix"), "b_matrix.window"));
  }
  if (kind == "e_to_f") {
    only_keys(j, {"kind", "of"}, "e_to_f");
    return e_to_f(matrix_from_json(require(j, "of", "e_to_f")));
  }
  if (kind == "tail_sum") {
    only_keys(j, {"kind", "of", "window"}, "tail_sum");
    return tail_sum_matrix(matrix_from_json(require(j, "of", "tail_sum")),
                           window_from(require(j, "window", "tail_sum"), "tail_sum.window"));
  }
  bad("matrix: unknown kind \"" + kind + "\"");
}

OJson matrix_to_json(const FourDimMatrix& a) {
  OJson out;
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, MatrixEntries>) {
          out["kind"] = "entries";
          OJson list = OJson::array();
          for (const auto& [row, es] : b.rows)
            for (const auto& e : es) list.push_back(OJson::array({row.first, row.second, e.k, e.l, e.value}));
          out["entries"] = std::move(list);
        } else if constexpr (std::is_same_v<B, BuiltinMatrix>) {
          out["kind"] = "builtin";
          out["name"] = b.name;
          out["params"] = params_to(b.params);
        } else {
          out["kind"] = b.name;
          auto window = [&] {
            return OJson::array({static_cast<Index>(param_value(b.params, "m_max")),
                                 static_cast<Index>(param_value(b.params, "n_max"))});
          };
          if (b.name == "b_matrix") {
            out["a"] = sequence_to_json(b.seq_sources.at(0));
            out["window"] = window();
          } else if (b.name == "e_to_f") {
            out["of"] = matrix_to_json(b.mat_sources.at(0));
          } else if (b.name == "tail_sum") {
            out["of"] = matrix_to_json(b.mat_sources.at(0));
            out["window"] = window();
          } else {
            bad("matrix family \"" + b.name + "\" has no JSON form");
          }
        }
      },
      a.body());
  return out;
}

RunConfig config_from_json(const Json& j, RunConfig cfg) {
  if (!j.is_object()) bad("config: expected an object");
  only_keys(j, {"tol", "growth_factor", "fringe", "schedule", "matrix_schedule", "prefix_P", "cell_cap", "bound_slack"},
            "config");
  if (j.contains("tol")) cfg.tol = number(j["tol"], "config.tol");
  if (j.contains("growth_factor")) cfg.growth_factor = number(j["growth_factor"], "config.growth_factor");
  if (j.contains("fringe")) cfg.fringe = integer(j["fringe"], "config.fringe");
  if (j.contains("schedule")) cfg.schedule_sides = sides_from(j["schedule"], "config.schedule");
  if (j.contains("matrix_schedule")) cfg.matrix_sides = sides_from(j["matrix_schedule"], "config.matrix_schedule");
  if (j.contains("prefix_P")) cfg.prefix_p = integer(j["prefix_P"], "config.prefix_P");
  if (j.contains("cell_cap")) {
    Index cap = integer(j["cell_cap"], "config.cell_cap");
    if (cap <= 0) bad("config.cell_cap: must be positive");
    cfg.cell_cap = static_cast<std::uint64_t>(cap);
  }
  if (j.contains("bound_slack")) cfg.bound_slack = number(j["bound_slack"], "config.bound_slack");
  cfg.validate();
  return cfg;
}

OJson config_to_json(const RunConfig& cfg) {
  OJson out;
  out["tol"] = cfg.tol;
  out["growth_factor"] = cfg.growth_factor;
  out["fringe"] = cfg.fringe;
  out["schedule"] = cfg.schedule_sides;
  out["matrix_schedule"] = cfg.matrix_sides;
  out["prefix_P"] = cfg.prefix_p;
  out["cell_cap"] = cfg.cell_cap;
  out["bound_slack"] = cfg.bound_slack;
  return out;
}

OJson to_json(const Window& w) { return OJson::array({w.m_max(), w.n_max()}); }

OJson to_json(const ConvergenceReport& r) {
  OJson out;
  out["rule"] = std::string(to_string(r.rule));
  out["verdict"] = std::string(to_string(r.verdict));
  out["limit"] = r.converges() ? OJson(r.limit) : OJson(nullptr);
  out["exact"] = r.exact;
  OJson ev = OJson::array();
  for (const auto& e : r.evidence) {
    OJson o;
    o["window"] = to_json(e.window);
    o["tail_residual"] = e.tail_residual;
    o["sup"] = e.sup;
    o["tail_sup"] = e.tail_sup;
    ev.push_back(std::move(o));
  }
  out["evidence"] = std::move(ev);
  OJson lines = OJson::array();
  for (const auto& l : r.lines) {
    OJson o;
    o["line"] = l.is_row ? "row" : "column";
    o["index"] = l.index;
    o["verdict"] = std::string(to_string(l.verdict));
    o["limit"] = l.verdict == Verdict::converges ? OJson(l.limit) : OJson(nullptr);
    lines.push_back(std::move(o));
  }
  out["lines"] = std::move(lines);
  if (r.witness) {
    OJson w;
    w["at"] = OJson::array({r.witness->at.m, r.witness->at.n});
    w["window"] = to_json(r.witness->window);
    w["observed"] = r.witness->observed;
    w["previous_sup"] = r.witness->previous_sup;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

OJson to_json(const MembershipVerdict& v) {
  OJson out;
  out["space"] = to_string(v.space);
  out["outcome"] = std::string(to_string(v.outcome));
  out["limit_is_zero"] = v.limit_is_zero ? OJson(*v.limit_is_zero) : OJson(nullptr);
  OJson reps = OJson::array();
  for (const auto& r : v.reports) {
    OJson o;
    o["name"] = r.name;
    o["report"] = to_json(r.report);
    reps.push_back(std::move(o));
  }
  out["reports"] = std::move(reps);
  return out;
}

OJson to_json(const DualConditionReport& r) {
  OJson out;
  out["condition"] = r.condition;
  out["verdict"] = std::string(to_string(r.verdict));
  out["value"] = optional_number(r.value);
  out["index"] = r.index ? OJson(*r.index) : OJson(nullptr);
  out["report"] = to_json(r.report);
  return out;
}

OJson to_json(const ConditionReport& r) {
  OJson out;
  out["id"] = r.id;
  out["verdict"] = std::string(to_string(r.verdict));
  out["value"] = optional_number(r.value);
  OJson limits = OJson::object();
  for (const auto& [k, v] : r.limits) limits[k] = v;
  out["limits"] = std::move(limits);
  OJson ws = OJson::array();
  for (const auto& w : r.witnesses) {
    OJson o;
    o["row"] = OJson::array({w.m, w.n});
    o["column"] = w.k && w.l ? OJson::array({*w.k, *w.l}) : OJson(nullptr);
    o["window"] = to_json(w.window);
    o["observed"] = w.observed;
    o["bound"] = w.bound;
    ws.push_back(std::move(o));
  }
  out["witnesses"] = std::move(ws);
  out["exact"] = r.exact;
  out["note"] = r.note;
  return out;
}

OJson to_json(const BatteryReport& r) {
  OJson out;
  out["class"] = to_string(r.cls);
  out["overall"] = std::string(to_string(r.overall));
  out["prefix_P"] = r.prefix_p;
  out["rows"] = to_json(r.rows);
  OJson conds = OJson::array();
  for (const auto& c : r.conditions) conds.push_back(to_json(c));
  out["conditions"] = std::move(conds);
  return out;
}

OJson table_json(const DoubleSequence& x, const Window& w, std::uint64_t cell_cap) {
  OJson rows = OJson::array();
  if (x.exact()) {
    Grid<std::int64_t> g = x.table_exact(w, cell_cap);
    for (Index m = 0; m < g.rows(); ++m) rows.push_back(OJson(std::vector<std::int64_t>(g.row(m).begin(), g.row(m).end())));
  } else {
    Grid<double> g = x.table(w, cell_cap);
    for (Index m = 0; m < g.rows(); ++m) rows.push_back(OJson(std::vector<double>(g.row(m).begin(), g.row(m).end())));
  }
  return rows;
}

}  // namespace dseq::io
