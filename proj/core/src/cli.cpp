#include "matfin/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "matfin/finiteness.hpp"
#include "matfin/io.hpp"
#include "matfin/nilpotent.hpp"
#include "matfin/order.hpp"

namespace matfin {

namespace {

using json = nlohmann::json;

json field_json(FieldRef f) {
  return {{"p", f->characteristic()}, {"k", f->degree()}, {"defining_poly", f->defining_poly()}};
}

json trace_json(const TraceEvent& ev) {
  json j = {{"step", ev.step}};
  for (const auto& [k, v] : ev.fields) {
    if (std::holds_alternative<std::int64_t>(v)) {
      j[k] = std::get<std::int64_t>(v);
    } else {
      j[k] = std::get<std::string>(v);
    }
  }
  return j;
}

void put_point(json& out, const std::optional<AdmissiblePoint>& pt) {
  out["alpha"] = json::array();
  out["nu"] = nullptr;
  if (!pt) return;
  for (const auto& a : pt->alpha) out["alpha"].push_back(a.coeffs());
  out["nu"] = pt->nu;
  out["alpha_field"] = field_json(pt->field);
}

json evidence_json(const Evidence& ev) {
  json j = {{"kind", to_string(ev.kind)}};
  switch (ev.kind) {
    case EvidenceKind::IsoBasis:
      j["algebra_dim"] = ev.algebra_dim;
      break;
    case EvidenceKind::DuplicateCollapse:
      j["pair"] = {ev.first, ev.second};
      break;
    case EvidenceKind::SpanDefect:
    case EvidenceKind::ZeroInvariantModule:
      j["algebra_dim"] = ev.algebra_dim;
      j["defect"] = {{"basis_index", ev.first}, {"generator", ev.second}};
      break;
    default:
      break;
  }
  return j;
}

void put_verdict(json& out, const Verdict& v) {
  out["finite"] = v.finite;
  out["order"] = nullptr;
  put_point(out, v.evidence.point);
  out["evidence"] = to_string(v.evidence.kind);
  out["details"] = evidence_json(v.evidence);
  json cs = json::array();
  for (const auto& c : v.constituents)
    cs.push_back({{"degree", c.degree}, {"depth", c.depth}, {"finite", c.finite}, {"evidence", to_string(c.evidence.kind)}});
  out["constituents"] = std::move(cs);
  out["stats"] = {{"worklist_iterations", v.stats.worklist_iterations},
                  {"module_calls", v.stats.module_calls},
                  {"max_module_iterations", v.stats.max_module_iterations},
                  {"admissible_searches", v.stats.admissible_searches}};
}

json error_json(const std::string& command, const std::string& kind, const std::string& message) {
  json j = {{"command", command}, {"finite", nullptr}, {"order", nullptr}, {"alpha", json::array()},
            {"nu", nullptr},      {"evidence", nullptr}};
  j["error"] = {{"kind", kind}, {"message", message}};
  return j;
}

struct Settings {
  std::string file;
  std::uint64_t seed = 1;
  unsigned max_nu = 12;
  bool nilpotent = false;
  bool trace = false;
  bool cr_shortcut = false;
  std::size_t budget = 200;
  std::uint64_t cap = 100000;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finiteness and orders of matrix groups over F_q(X_1, ..., X_m)", "matfin"};
  app.require_subcommand(1);
  Settings s;

  auto* is_finite_cmd = app.add_subcommand("is-finite", "Decide whether the group is finite");
  is_finite_cmd->add_option("file", s.file, "Group file")->required();
  is_finite_cmd->add_flag("--nilpotent", s.nilpotent, "Assume the group is nilpotent");
  is_finite_cmd->add_option("--seed", s.seed, "Random seed");
  is_finite_cmd->add_option("--max-nu", s.max_nu, "Largest extension degree searched for admissible points")
      ->check(CLI::Range(1u, 64u));
  is_finite_cmd->add_flag("--trace", s.trace, "Emit one JSON line per algorithm step on stderr");

  auto* order_cmd = app.add_subcommand("order", "Compute the order of a finite group");
  order_cmd->add_option("file", s.file, "Group file")->required();
  order_cmd->add_option("--seed", s.seed, "Random seed");
  order_cmd->add_flag("--cr-shortcut", s.cr_shortcut, "Assume complete reducibility and compare over F_{q^nu}");
  order_cmd->add_option("--budget", s.budget, "Specialization attempts before giving up")->check(CLI::PositiveNumber);
  order_cmd->add_flag("--trace", s.trace, "Emit one JSON line per algorithm step on stderr");

  auto* element_cmd = app.add_subcommand("element-order-finite", "Decide whether a single generator has finite order");
  element_cmd->add_option("file", s.file, "Group file with exactly one generator")->required();
  element_cmd->add_option("--seed", s.seed, "Random seed");

  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate the group by closure, up to a cap");
  oracle_cmd->add_option("file", s.file, "Group file")->required();
  oracle_cmd->add_option("--cap", s.cap, "Largest order enumerated")->required()->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << error_json("", "usage", e.what()).dump() << '\n';
    return kExitInput;
  }

  std::string command = app.get_subcommands().front()->get_name();
  json trace = json::array();
  TraceSink sink;
  if (s.trace) {
    sink = [&](const TraceEvent& ev) {
      json j = trace_json(ev);
      err << j.dump() << '\n';
      trace.push_back(std::move(j));
    };
  }

  try {
    GroupInput g = load_group_file(s.file);
    json result = {{"command", command}};
    DecisionOptions dopt;
    dopt.seed = s.seed;
    dopt.max_nu = s.max_nu;
    dopt.trace = sink;

    if (command == "is-finite") {
      if (s.nilpotent) {
        NilpotentVerdict nv = is_finite_nilpotent(g.generators, dopt);
        put_verdict(result, nv.powered);
        result["gamma"] = nv.gamma;
      } else {
        put_verdict(result, is_finite(g.generators, dopt));
      }
    } else if (command == "element-order-finite") {
      if (g.generators.size() != 1)
        throw ParseError("element-order-finite needs exactly one generator, got " + std::to_string(g.generators.size()), 0, 0);
      NilpotentVerdict nv = has_finite_order(g.generators.front(), dopt);
      put_verdict(result, nv.powered);
      result["gamma"] = nv.gamma;
    } else if (command == "order") {
      Verdict v = is_finite(g.generators, dopt);
      put_verdict(result, v);
      if (v.finite) {
        SizeOptions so;
        so.seed = s.seed;
        so.budget = s.budget;
        so.cr_shortcut = s.cr_shortcut;
        so.trace = sink;
        GroupOrder go = size_finite(g.generators, so);
        result["order"] = go.order.str();
        put_point(result, go.point);
        result["evidence"] = "IsoBasis";
        json orbits = json::array();
        for (auto l : go.ff.orbit_lengths) orbits.push_back(l);
        result["certificate"] = {{"engine", go.engine},
                                 {"mu", s.cr_shortcut ? go.point.nu : 1u},
                                 {"attempts", go.attempts},
                                 {"algebra_dim", go.algebra_dim},
                                 {"orbit_lengths", std::move(orbits)},
                                 {"strong_generators", go.ff.strong_generators}};
      }
    } else {
      auto n = closure_order<RatFunc>(g.generators, s.cap);
      result["finite"] = n ? json(true) : json(nullptr);
      result["order"] = n ? json(std::to_string(*n)) : json(nullptr);
      result["alpha"] = json::array();
      result["nu"] = nullptr;
      result["evidence"] = n ? "Closure" : "ExceededCap";
      result["cap"] = s.cap;
    }
    if (s.trace) result["trace"] = std::move(trace);
    out << result.dump() << '\n';
    return kExitOk;
  } catch (const ParseError& e) {
    json j = error_json(command, "input", e.what());
    if (e.line()) {
      j["error"]["line"] = e.line();
      j["error"]["column"] = e.column();
    }
    out << j.dump() << '\n';
    return kExitInput;
  } catch (const AdmissibleSearchExhausted& e) {
    out << error_json(command, "resource", e.what()).dump() << '\n';
    return kExitResource;
  } catch (const ResourceLimit& e) {
    out << error_json(command, "resource", e.what()).dump() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    out << error_json(command, "input", e.what()).dump() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    out << error_json(command, "internal", e.what()).dump() << '\n';
    return kExitResource;
  }
}

}  // namespace matfin
