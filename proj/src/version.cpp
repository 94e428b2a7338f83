#include <debgraph/version.hpp>

#include <debgraph/error.hpp>

#include <charconv>
#include <limits>

namespace debgraph {

namespace {

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
bool is_alpha(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_upstream_char(char c) noexcept {
  return is_digit(c) || is_alpha(c) || c == '.' || c == '+' || c == '~' ||
         c == '-' || c == ':';
}

bool is_revision_char(char c) noexcept {
  return is_digit(c) || is_alpha(c) || c == '.' || c == '+' || c == '~';
}

// Weight of a character in the non-digit part of a run. The end of the
// string weighs 0, so only '~' sorts before it.
int order(char c) noexcept {
  if (is_digit(c))
    return 0;
  if (is_alpha(c))
    return static_cast<unsigned char>(c);
  if (c == '~')
    return -1;
  if (c != '\0')
    return static_cast<unsigned char>(c) + 256;
  return 0;
}

} // namespace

std::string DebVersion::str() const {
  std::string out;
  // A colon in upstream needs the epoch separator even for epoch 0.
  if (epoch != 0 || upstream.find(':') != std::string::npos) {
    out += std::to_string(epoch);
    out += ':';
  }
  out += upstream;
  if (revision) {
    out += '-';
    out += *revision;
  }
  return out;
}

DebVersion parse_version(std::string_view s) {
  if (s.empty())
    throw Error(ErrorCode::EmptyVersion, "empty version string", 0);

  DebVersion v;
  std::size_t upstream_begin = 0;

  if (auto colon = s.find(':'); colon != std::string_view::npos) {
    std::string_view digits = s.substr(0, colon);
    if (digits.empty())
      throw Error(ErrorCode::NonNumericEpoch, "empty epoch in version '" +
                                                  std::string(s) + "'",
                  0);
    for (std::size_t i = 0; i < digits.size(); ++i)
      if (!is_digit(digits[i]))
        throw Error(ErrorCode::NonNumericEpoch,
                    "epoch in version '" + std::string(s) + "' is not a number",
                    i);
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), v.epoch);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw Error(ErrorCode::NonNumericEpoch,
                  "epoch in version '" + std::string(s) + "' is out of range",
                  0);
    upstream_begin = colon + 1;
  }

  std::size_t upstream_end = s.size();
  if (auto dash = s.rfind('-');
      dash != std::string_view::npos && dash >= upstream_begin) {
    std::string_view rev = s.substr(dash + 1);
    if (rev.empty())
      throw Error(ErrorCode::EmptyVersion,
                  "empty revision in version '" + std::string(s) + "'",
                  dash + 1);
    for (std::size_t i = 0; i < rev.size(); ++i)
      if (!is_revision_char(rev[i]))
        throw Error(ErrorCode::IllegalCharacter,
                    "illegal character '" + std::string(1, rev[i]) +
                        "' in version '" + std::string(s) + "'",
                    dash + 1 + i);
    v.revision = std::string(rev);
    upstream_end = dash;
  }

  std::string_view up = s.substr(upstream_begin, upstream_end - upstream_begin);
  if (up.empty())
    throw Error(ErrorCode::EmptyVersion,
                "empty upstream version in '" + std::string(s) + "'",
                upstream_begin);
  for (std::size_t i = 0; i < up.size(); ++i)
    if (!is_upstream_char(up[i]))
      throw Error(ErrorCode::IllegalCharacter,
                  "illegal character '" + std::string(1, up[i]) +
                      "' in version '" + std::string(s) + "'",
                  upstream_begin + i);
  v.upstream = std::string(up);
  return v;
}

int compare_version_part(std::string_view a, std::string_view b) noexcept {
  std::size_t i = 0, j = 0;
  auto at = [](std::string_view s, std::size_t k) {
    return k < s.size() ? s[k] : '\0';
  };

  while (i < a.size() || j < b.size()) {
    int first_diff = 0;

    while ((i < a.size() && !is_digit(a[i])) ||
           (j < b.size() && !is_digit(b[j]))) {
      int ac = order(at(a, i));
      int bc = order(at(b, j));
      if (ac != bc)
        return ac - bc;
      ++i;
      ++j;
    }

    while (at(a, i) == '0')
      ++i;
    while (at(b, j) == '0')
      ++j;

    while (is_digit(at(a, i)) && is_digit(at(b, j))) {
      if (first_diff == 0)
        first_diff = a[i] - b[j];
      ++i;
      ++j;
    }

    if (is_digit(at(a, i)))
      return 1;
    if (is_digit(at(b, j)))
      return -1;
    if (first_diff != 0)
      return first_diff;
  }
  return 0;
}

std::strong_ordering compare_versions(const DebVersion& a,
                                      const DebVersion& b) noexcept {
  if (auto c = a.epoch <=> b.epoch; c != 0)
    return c;
  if (int c = compare_version_part(a.upstream, b.upstream); c != 0)
    return c <=> 0;
  // An absent revision weighs the same as an empty one.
  int c = compare_version_part(a.revision.value_or(std::string{}),
                               b.revision.value_or(std::string{}));
  return c <=> 0;
}

std::string_view to_string(ConstraintOp op) noexcept {
  switch (op) {
  case ConstraintOp::Less: return "<<";
  case ConstraintOp::LessEqual: return "<=";
  case ConstraintOp::Equal: return "=";
  case ConstraintOp::GreaterEqual: return ">=";
  case ConstraintOp::Greater: return ">>";
  }
  return "?";
}

std::optional<ConstraintOp> parse_constraint_op(std::string_view s) noexcept {
  if (s == "<<") return ConstraintOp::Less;
  if (s == "<=") return ConstraintOp::LessEqual;
  if (s == "=") return ConstraintOp::Equal;
  if (s == ">=") return ConstraintOp::GreaterEqual;
  if (s == ">>") return ConstraintOp::Greater;
  return std::nullopt;
}

bool satisfies(const DebVersion& candidate, ConstraintOp op,
               const DebVersion& bound) noexcept {
  auto c = compare_versions(candidate, bound);
  switch (op) {
  case ConstraintOp::Less: return c < 0;
  case ConstraintOp::LessEqual: return c <= 0;
  case ConstraintOp::Equal: return c == 0;
  case ConstraintOp::GreaterEqual: return c >= 0;
  case ConstraintOp::Greater: return c > 0;
  }
  return false;
}

} // namespace debgraph
