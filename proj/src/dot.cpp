#include "analogy/dot.hpp"

#include <sstream>

namespace analogy {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string wd_to_dot(const WiringDiagram& w, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=LR;\n  node [shape=box];\n";
  for (const VertexId& v : w.graph().vertices()) {
    std::string text = v;
    for (const Label& l : w.state_vector(v)) text += "\n" + l.to_string();
    out << "  " << quote(v) << " [label=" << quote(text) << "];\n";
  }
  for (const Arrow& a : w.graph().arrows()) {
    out << "  " << quote(a.source) << " -> " << quote(a.target) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string olog_to_dot(const Olog& o, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  node [shape=box];\n";
  for (const OlogType& t : o.types()) {
    out << "  " << quote(t.id) << " [label=" << quote(t.text.empty() ? t.id : t.text) << "];\n";
  }
  for (const Aspect& a : o.aspects()) {
    out << "  " << quote(a.source) << " -> " << quote(a.target) << " [label=" << quote(a.text)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace analogy
