#include <debgraph/relation.hpp>

#include <debgraph/error.hpp>

#include <algorithm>

namespace debgraph {

namespace {

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool is_name_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '+' || c == '.' || c == '-' ||
         c == ':' || c == '_';
}

bool is_arch_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '!';
}

bool ascii_iequal(std::string_view a, std::string_view b) noexcept {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    auto lower = [](char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    };
    return lower(x) == lower(y);
  });
}

class RelationParser {
public:
  RelationParser(RelationKind kind, std::string_view text)
      : kind_(kind), text_(text) {}

  RelationExpr parse() {
    RelationExpr expr;
    skip_space();
    if (at_end())
      return expr;

    for (;;) {
      expr.groups.push_back(parse_group());
      skip_space();
      if (at_end())
        break;
      char c = peek();
      if (c == ',') {
        ++pos_;
        skip_space();
        if (at_end())
          fail(ErrorCode::BadAtomName, "trailing ',' without a package");
        continue;
      }
      unexpected();
    }
    return expr;
  }

private:
  OrGroup parse_group() {
    OrGroup group;
    for (;;) {
      group.push_back(parse_atom());
      skip_space();
      if (!at_end() && peek() == '|') {
        if (kind_ == RelationKind::Provides)
          fail(ErrorCode::AlternativesInProvides,
               "alternatives are not allowed in Provides");
        ++pos_;
        skip_space();
        continue;
      }
      return group;
    }
  }

  PackageAtom parse_atom() {
    PackageAtom atom;
    skip_space();

    std::size_t start = pos_;
    while (!at_end() && is_name_char(peek()))
      ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name.empty()) {
      if (at_end() || peek() == ',' || peek() == '|')
        fail(ErrorCode::BadAtomName, "missing package name");
      unexpected();
    }
    if (!is_valid_package_name(name))
      fail(ErrorCode::BadAtomName,
           "invalid package name '" + std::string(name) + "'", start);
    atom.name = std::string(name);

    skip_space();
    if (!at_end() && peek() == '(')
      parse_constraint(atom);

    skip_space();
    if (!at_end() && peek() == '[')
      parse_arch_list(atom);

    skip_space();
    if (!at_end() && peek() == '<')
      fail(ErrorCode::BuildProfileRestriction,
           "build-profile restrictions are not allowed in binary relations");

    return atom;
  }

  void parse_constraint(PackageAtom& atom) {
    std::size_t open = pos_++;
    skip_space();

    std::size_t op_start = pos_;
    while (!at_end() && (peek() == '<' || peek() == '>' || peek() == '='))
      ++pos_;
    std::string_view op_text = text_.substr(op_start, pos_ - op_start);
    auto op = parse_constraint_op(op_text);
    if (!op) {
      if (at_end())
        fail(ErrorCode::UnbalancedParenthesis, "unterminated '('", open);
      fail(ErrorCode::BadConstraintOp,
           "bad version operator '" + std::string(op_text) + "'", op_start);
    }
    if (kind_ == RelationKind::Provides && *op != ConstraintOp::Equal)
      fail(ErrorCode::BadConstraintOp,
           "Provides only allows '=' (got '" + std::string(op_text) + "')",
           op_start);

    skip_space();
    std::size_t ver_start = pos_;
    while (!at_end() && !is_space(peek()) && peek() != ')' && peek() != '(')
      ++pos_;
    std::string_view ver_text = text_.substr(ver_start, pos_ - ver_start);

    skip_space();
    if (at_end() || peek() != ')')
      fail(ErrorCode::UnbalancedParenthesis, "unterminated '('", open);
    if (ver_text.empty())
      fail(ErrorCode::EmptyVersion, "missing version in constraint", ver_start);
    ++pos_;

    DebVersion version;
    try {
      version = parse_version(ver_text);
    } catch (const Error& e) {
      throw Error(e.code(),
                  std::string(field_name(kind_)) + ": " + e.what(),
                  ver_start + e.location().value_or(0));
    }

    if (kind_ == RelationKind::Provides)
      atom.provided_version = std::move(version);
    else
      atom.constraint = VersionConstraint{*op, std::move(version)};
  }

  void parse_arch_list(PackageAtom& atom) {
    std::size_t open = pos_++;
    for (;;) {
      skip_space();
      if (at_end())
        fail(ErrorCode::UnbalancedParenthesis, "unterminated '['", open);
      if (peek() == ']') {
        ++pos_;
        break;
      }
      std::size_t start = pos_;
      while (!at_end() && is_arch_char(peek()))
        ++pos_;
      if (pos_ == start)
        unexpected();
      atom.arch_qualifier.emplace_back(text_.substr(start, pos_ - start));
    }
    if (atom.arch_qualifier.empty())
      fail(ErrorCode::BadAtomName, "empty architecture list", open);
  }

  [[noreturn]] void unexpected() {
    char c = peek();
    if (c == ')' || c == ']')
      fail(ErrorCode::UnbalancedParenthesis,
           std::string("unbalanced '") + c + "'");
    if (c == '<')
      fail(ErrorCode::BuildProfileRestriction,
           "build-profile restrictions are not allowed in binary relations");
    fail(ErrorCode::BadAtomName, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(ErrorCode code, std::string msg) {
    fail(code, std::move(msg), pos_);
  }

  [[noreturn]] void fail(ErrorCode code, std::string msg, std::size_t at) {
    throw Error(code,
                std::string(field_name(kind_)) + ": " + msg + " at offset " +
                    std::to_string(at),
                at);
  }

  void skip_space() {
    while (!at_end() && is_space(peek()))
      ++pos_;
  }

  bool at_end() const noexcept { return pos_ >= text_.size(); }
  char peek() const noexcept { return text_[pos_]; }

  RelationKind kind_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

std::string_view field_name(RelationKind kind) noexcept {
  switch (kind) {
  case RelationKind::Depends: return "Depends";
  case RelationKind::PreDepends: return "Pre-Depends";
  case RelationKind::Recommends: return "Recommends";
  case RelationKind::Suggests: return "Suggests";
  case RelationKind::Enhances: return "Enhances";
  case RelationKind::Provides: return "Provides";
  case RelationKind::Conflicts: return "Conflicts";
  case RelationKind::Breaks: return "Breaks";
  case RelationKind::Replaces: return "Replaces";
  }
  return "?";
}

std::optional<RelationKind> relation_kind_from_field(std::string_view name) noexcept {
  for (RelationKind k : all_relation_kinds)
    if (ascii_iequal(field_name(k), name))
      return k;
  return std::nullopt;
}

bool is_valid_package_name(std::string_view name) noexcept {
  if (name.size() < 2)
    return false;
  auto lower_alnum = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
  };
  if (!lower_alnum(name.front()))
    return false;
  return std::all_of(name.begin() + 1, name.end(), [&](char c) {
    return lower_alnum(c) || c == '+' || c == '.' || c == '-';
  });
}

RelationExpr parse_relation(RelationKind kind, std::string_view text) {
  return RelationParser(kind, text).parse();
}

std::string render_atom(const PackageAtom& atom) {
  std::string out = atom.name;
  if (atom.constraint) {
    out += " (";
    out += to_string(atom.constraint->op);
    out += ' ';
    out += atom.constraint->version.str();
    out += ')';
  } else if (atom.provided_version) {
    out += " (= ";
    out += atom.provided_version->str();
    out += ')';
  }
  if (!atom.arch_qualifier.empty()) {
    out += " [";
    for (std::size_t i = 0; i < atom.arch_qualifier.size(); ++i) {
      if (i != 0)
        out += ' ';
      out += atom.arch_qualifier[i];
    }
    out += ']';
  }
  return out;
}

std::string render_group(const OrGroup& group) {
  std::string out;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i != 0)
      out += " | ";
    out += render_atom(group[i]);
  }
  return out;
}

std::string render_relation(const RelationExpr& expr) {
  std::string out;
  for (std::size_t i = 0; i < expr.groups.size(); ++i) {
    if (i != 0)
      out += ", ";
    out += render_group(expr.groups[i]);
  }
  return out;
}

} // namespace debgraph
