#include "commnet/render.hpp"

#include <algorithm>
#include <sstream>

namespace commnet {

RenderNet render_net(const Net& net) {
  RenderNet r;
  for (const auto& p : net.places) r.places.push_back({p.name, p.local, false, false});
  for (const auto& t : net.transitions) {
    if (t.targets.empty()) {
      r.places[t.source].lose_mark = true;
      continue;
    }
    if (t.targets.size() == 2 && t.targets[0] == t.source && t.targets[1] == t.source) {
      r.places[t.source].dup_mark = true;
      continue;
    }
    r.boxes.push_back({t.source, t.targets});
  }
  return r;
}

RenderNet render_net(const ProcessPtr& p) { return render_net(compile(p)); }

std::string to_dot(const RenderNet& r) {
  std::ostringstream out;
  out << "digraph communication_net {\n";
  out << "  rankdir=LR;\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  for (size_t i = 0; i < r.places.size(); ++i) {
    const auto& p = r.places[i];
    std::string mark;
    if (p.lose_mark && p.dup_mark)
      mark = "*";
    else if (p.lose_mark)
      mark = "?";
    else if (p.dup_mark)
      mark = "+";
    std::string label = p.name;
    if (!mark.empty()) label += "\\n" + mark;
    out << "  c" << i << " [shape=circle, label=\"" << label << "\"";
    if (p.local) out << ", style=dashed";
    out << "];\n";
  }
  for (size_t i = 0; i < r.boxes.size(); ++i) {
    out << "  t" << i << " [shape=box, style=filled, fillcolor=black, label=\"\", width=0.12, "
        << "height=0.4, fixedsize=true];\n";
  }
  for (size_t i = 0; i < r.boxes.size(); ++i) {
    const auto& b = r.boxes[i];
    out << "  c" << b.source << " -> t" << i << ";\n";
    for (uint32_t tgt : b.targets) out << "  t" << i << " -> c" << tgt << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace commnet
