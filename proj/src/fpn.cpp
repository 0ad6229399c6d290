#include "sgat/fpn.hpp"

#include "sgat/errors.hpp"
#include "sgat/text.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace sgat {

int FPNSpec::find_vertex(std::string_view name) const {
  auto it = std::find(vertices.begin(), vertices.end(), name);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

FPNSpec parse_fpn(std::string_view document) {
  auto lines = text::tokenize(document);
  if (lines.empty()) throw ParseError("empty document", 1);
  const auto& head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0].text != "fpn" ||
      head.tokens[1].text.rfind("m=", 0) != 0)
    throw ParseError("expected 'fpn m=<int>' header", head.number, 1);

  FPNSpec spec;
  if (!parse_natural(std::string_view(head.tokens[1].text).substr(2), spec.m))
    throw ParseError("invalid bound m", head.number, head.tokens[1].column);

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& kw = line.tokens[0].text;
    if (kw == "vertex") {
      if (line.tokens.size() != 2) throw ParseError("expected 'vertex <name>'", line.number, 1);
      const auto& tok = line.tokens[1];
      if (!text::is_identifier(tok.text))
        throw ParseError("invalid identifier '" + tok.text + "'", line.number, tok.column);
      if (spec.find_vertex(tok.text) >= 0)
        throw ParseError("duplicate vertex '" + tok.text + "'", line.number, tok.column);
      spec.vertices.push_back(tok.text);
    } else if (kw == "edge") {
      if (line.tokens.size() != 4)
        throw ParseError("expected 'edge <u> <v> <t>'", line.number, 1);
      StaticEdge e;
      for (int j : {1, 2}) {
        int v = spec.find_vertex(line.tokens[j].text);
        if (v < 0)
          throw ParseError("unknown vertex '" + line.tokens[j].text + "'", line.number,
                           line.tokens[j].column);
        (j == 1 ? e.from : e.to) = v;
      }
      const auto& t = line.tokens[3];
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e.offset);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size())
        throw ParseError("invalid offset '" + t.text + "'", line.number, t.column);
      if (e.offset < 0) throw ParseError("negative offset", line.number, t.column);
      if (e.offset == 0 && e.from == e.to)
        throw ParseError("self-loop at offset 0", line.number, line.tokens[0].column);
      if (std::find(spec.edges.begin(), spec.edges.end(), e) != spec.edges.end())
        throw ParseError("duplicate edge", line.number, line.tokens[0].column);
      spec.edges.push_back(e);
    } else {
      throw ParseError("unknown directive '" + kw + "'", line.number, line.tokens[0].column);
    }
  }
  return spec;
}

std::string serialize(const FPNSpec& spec) {
  std::ostringstream out;
  out << "fpn m=" << spec.m << '\n';
  for (const auto& v : spec.vertices) out << "vertex " << v << '\n';
  for (const auto& e : spec.edges)
    out << "edge " << spec.vertices[e.from] << ' ' << spec.vertices[e.to] << ' ' << e.offset
        << '\n';
  return out.str();
}

int fpn_narrowness(const FPNSpec& spec) {
  int k = 0;
  for (const auto& e : spec.edges) k = std::max(k, e.offset);
  return k;
}

}  // namespace sgat
