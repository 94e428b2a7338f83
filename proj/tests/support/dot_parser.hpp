#pragma once

// Minimal DOT reader for the subset the emitter writes: one digraph with
// node, edge, attribute and subgraph statements. Throws std::runtime_error
// on anything it does not understand.

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace debgraph::testing {

using DotAttrs = std::map<std::string, std::string>;

struct DotNode {
  std::string id;
  DotAttrs attrs;
  std::string subgraph;
};

struct DotEdge {
  std::string from, to;
  DotAttrs attrs;
  std::string subgraph;
};

struct DotDocument {
  std::string name;
  DotAttrs graph_attrs;
  std::vector<DotNode> nodes;
  std::vector<DotEdge> edges;
  std::vector<std::string> subgraphs;
};

struct DotToken {
  enum Kind { Id, Quoted, Punct, End } kind;
  std::string text;
};

inline std::vector<DotToken> dot_tokenize(std::string_view s) {
  std::vector<DotToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      std::string text;
      ++i;
      for (;;) {
        if (i >= s.size())
          throw std::runtime_error("unterminated string");
        char d = s[i++];
        if (d == '"')
          break;
        if (d == '\\') {
          if (i >= s.size())
            throw std::runtime_error("dangling escape");
          char e = s[i++];
          text += e == 'n' ? '\n' : e;
          continue;
        }
        text += d;
      }
      out.push_back({DotToken::Quoted, text});
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({DotToken::Punct, "->"});
      i += 2;
    } else if (std::string_view("{}[];,=").find(c) != std::string_view::npos) {
      out.push_back({DotToken::Punct, std::string(1, c)});
      ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '.'))
        ++i;
      out.push_back({DotToken::Id, std::string(s.substr(start, i - start))});
    } else {
      throw std::runtime_error(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({DotToken::End, ""});
  return out;
}

class DotReader {
public:
  explicit DotReader(std::string_view text) : toks_(dot_tokenize(text)) {}

  DotDocument read() {
    DotDocument doc;
    expect_keyword("digraph");
    if (peek().kind == DotToken::Id || peek().kind == DotToken::Quoted)
      doc.name = next().text;
    expect("{");
    statements(doc, "");
    expect("}");
    if (peek().kind != DotToken::End)
      throw std::runtime_error("trailing input after graph");
    return doc;
  }

  // A bare statement list, e.g. a legend fragment.
  DotDocument read_fragment() {
    DotDocument doc;
    statements(doc, "");
    if (peek().kind != DotToken::End)
      throw std::runtime_error("trailing input after fragment");
    return doc;
  }

private:
  const DotToken& peek() const { return toks_[pos_]; }
  const DotToken& next() { return toks_[pos_++]; }

  bool is_id(const DotToken& t) const { return t.kind == DotToken::Id || t.kind == DotToken::Quoted; }

  void expect(std::string_view p) {
    if (peek().kind != DotToken::Punct || peek().text != p)
      throw std::runtime_error("expected '" + std::string(p) + "' got '" + peek().text + "'");
    ++pos_;
  }

  void expect_keyword(std::string_view k) {
    if (peek().kind != DotToken::Id || peek().text != k)
      throw std::runtime_error("expected " + std::string(k));
    ++pos_;
  }

  std::string id() {
    if (!is_id(peek()))
      throw std::runtime_error("expected identifier got '" + peek().text + "'");
    return next().text;
  }

  DotAttrs attr_list() {
    DotAttrs attrs;
    expect("[");
    while (!(peek().kind == DotToken::Punct && peek().text == "]")) {
      std::string key = id();
      expect("=");
      std::string value = id();
      if (!attrs.emplace(key, value).second)
        throw std::runtime_error("repeated attribute " + key);
      if (peek().kind == DotToken::Punct && (peek().text == "," || peek().text == ";"))
        ++pos_;
    }
    expect("]");
    return attrs;
  }

  void statements(DotDocument& doc, const std::string& sub) {
    while (!(peek().kind == DotToken::Punct && peek().text == "}") && peek().kind != DotToken::End) {
      if (peek().kind == DotToken::Id && peek().text == "subgraph") {
        ++pos_;
        std::string name = is_id(peek()) ? id() : "";
        doc.subgraphs.push_back(name);
        expect("{");
        statements(doc, name);
        expect("}");
        continue;
      }
      if (peek().kind == DotToken::Id &&
          (peek().text == "node" || peek().text == "edge" || peek().text == "graph")) {
        ++pos_;
        attr_list();
        expect(";");
        continue;
      }
      std::string first = id();
      if (peek().kind == DotToken::Punct && peek().text == "=") {
        ++pos_;
        std::string value = id();
        if (sub.empty())
          doc.graph_attrs[first] = value;
        expect(";");
        continue;
      }
      if (peek().kind == DotToken::Punct && peek().text == "->") {
        ++pos_;
        std::string second = id();
        DotAttrs attrs;
        if (peek().kind == DotToken::Punct && peek().text == "[")
          attrs = attr_list();
        doc.edges.push_back({first, second, attrs, sub});
        expect(";");
        continue;
      }
      DotAttrs attrs;
      if (peek().kind == DotToken::Punct && peek().text == "[")
        attrs = attr_list();
      doc.nodes.push_back({first, attrs, sub});
      expect(";");
    }
  }

  std::vector<DotToken> toks_;
  std::size_t pos_ = 0;
};

inline DotDocument parse_dot(std::string_view text) { return DotReader(text).read(); }

inline DotDocument parse_dot_fragment(std::string_view text) {
  return DotReader(text).read_fragment();
}

} // namespace debgraph::testing
