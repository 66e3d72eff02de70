#include <json.hpp>
#include <sstream>

#include "procalc/lts.hpp"
#include "procalc/surface.hpp"

namespace procalc {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string to_dot(const Lts& l) {
  std::ostringstream os;
  os << "digraph lts {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < l.size(); ++i) {
    os << "  s" << i << " [label=\"" << dot_escape(pretty(l.states[i].term)) << "\"";
    if (i == l.root) os << ", penwidth=2";
    if (!l.states[i].expanded) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : l.edges)
    os << "  s" << e.src << " -> s" << e.dst << " [label=\""
       << dot_escape(to_string(e.label, l.calculus)) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_json(const Lts& l, int indent) {
  nlohmann::json j;
  j["calculus"] = std::string(to_string(l.calculus));
  j["root"] = l.root;
  j["complete"] = l.complete;
  if (!l.complete) j["cut_reason"] = l.cut_reason;
  j["bounds"] = {{"max_states", l.bounds.max_states},
                 {"max_depth", l.bounds.max_depth},
                 {"max_bang_unfold", l.bounds.max_bang_unfold}};
  auto& states = j["states"] = nlohmann::json::array();
  for (std::size_t i = 0; i < l.size(); ++i)
    states.push_back({{"id", i},
                      {"term", pretty(l.states[i].term)},
                      {"expanded", l.states[i].expanded}});
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : l.edges)
    edges.push_back({{"src", e.src}, {"label", to_string(e.label, l.calculus)}, {"dst", e.dst}});
  return j.dump(indent);
}

} // namespace procalc
