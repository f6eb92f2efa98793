#include "patpoly/cli.hpp"

#include <sstream>

#include "patpoly/constructions.hpp"

namespace patpoly {

using nlohmann::json;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::budget_exceeded: return exit_budget;
    case ErrorCode::parse_error:
    case ErrorCode::unknown_id:
    case ErrorCode::invalid_argument:
    case ErrorCode::empty_class: return exit_usage;
    default: return exit_mismatch;
  }
}

std::vector<std::string> compute_ops() {
  return {"vertices", "dim", "facets", "fvector", "ehrhart", "hstar", "volume", "interior", "idp"};
}

namespace {

template <class T>
std::string tuple_str(const std::vector<T>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string inequality_str(const Inequality& q, const char* rel) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < q.normal.size(); ++i) os << (i ? "," : "") << q.normal[i];
  os << "] . x " << rel << " " << q.offset;
  return os.str();
}

// text is what markdown and csv print; value is the JSON payload
struct Value {
  std::string text;
  json value;
};

Value compute(const RunConfig& cfg) {
  const auto c = parse_construction(cfg.spec);
  const auto P = build(c);
  const auto opt = cfg.count();
  const auto& op = cfg.op;
  if (op == "vertices") {
    std::string text;
    json arr = json::array();
    for (const auto& v : P.vertices()) {
      text += (text.empty() ? "" : "\n") + tuple_str(v);
      arr.push_back(v);
    }
    return {text, arr};
  }
  if (op == "dim") return {std::to_string(P.dim()), P.dim()};
  if (op == "facets") {
    const auto& h = P.hrep();
    std::string text = std::to_string(h.facets.size()) + " facets";
    for (const auto& q : h.equalities) text += "\n" + inequality_str(q, "==");
    for (const auto& q : h.facets) text += "\n" + inequality_str(q, "<=");
    json j = to_json(h);
    j["count"] = h.facets.size();
    return {text, j};
  }
  if (op == "fvector") {
    const auto f = f_vector(P);
    return {tuple_str(f), f};
  }
  if (op == "ehrhart") {
    const auto e = ehrhart(P, opt);
    return {e.to_string(), {{"text", e.to_string()}, {"coefficients", e.to_json()}}};
  }
  if (op == "hstar") {
    const auto h = hstar(P, opt);
    json arr = json::array();
    for (const auto& x : h) arr.push_back(x.get_str());
    return {tuple_str(h), arr};
  }
  if (op == "volume") {
    const auto v = normalized_volume(P, opt);
    return {v.get_str(), v.get_str()};
  }
  if (op == "interior") {
    const auto k = interior_count(P, cfg.m, opt);
    return {std::to_string(k), {{"dilate", cfg.m}, {"count", k}}};
  }
  if (op == "idp") {
    const auto r = is_idp(P, cfg.max_m, opt);
    json j = {{"idp", r.idp}, {"max_m", cfg.max_m}};
    std::string text = r.idp ? "true" : "false";
    if (r.witness) {
      j["witness"] = *r.witness;
      j["dilate"] = r.witness_dilate;
      text += " witness " + tuple_str(*r.witness) + " at m=" + std::to_string(r.witness_dilate);
    }
    return {text, j};
  }
  fail(ErrorCode::unknown_id, "unknown operation '" + op + "'");
}

}  // namespace

json compute_value(const RunConfig& cfg) { return compute(cfg).value; }

CommandResult cmd_compute(const RunConfig& cfg) {
  cfg.validate();
  const auto v = compute(cfg);
  CommandResult r;
  switch (cfg.format) {
    case Format::json:
      r.output = json{{"spec", cfg.spec}, {"op", cfg.op}, {"result", v.value}}.dump(2) + "\n";
      break;
    case Format::csv: {
      Table t;
      t.header = {"spec", "op", "result"};
      t.rows.push_back({cfg.spec, cfg.op, v.text});
      r.output = t.render(Format::csv);
      break;
    }
    case Format::markdown: r.output = v.text + "\n"; break;
  }
  return r;
}

CommandResult cmd_table(std::string_view name, const RunConfig& cfg) {
  cfg.validate();
  const auto rep = table_report(name, cfg);
  return {rep.render(cfg.format), rep.pass() ? exit_pass : exit_mismatch};
}

CommandResult cmd_verify(std::string_view suite, const RunConfig& cfg) {
  cfg.validate();
  const auto rep = verify_suite(suite, cfg);
  // the conjecture suite only reports
  const bool ok = suite == "conjectures" || rep.pass();
  return {rep.render(cfg.format), ok ? exit_pass : exit_mismatch};
}

}  // namespace patpoly
