#include <debgraph/control.hpp>

#include <debgraph/error.hpp>

#include <algorithm>

namespace debgraph {

namespace {

char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_blank(char c) noexcept { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_blank(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back()))
    s.remove_suffix(1);
  return s;
}

bool is_blank_line(std::string_view line) noexcept {
  return std::all_of(line.begin(), line.end(), is_blank);
}

// Returns an error description when the value cannot survive a
// render/parse round trip, nullptr otherwise.
const char* unrenderable_value(std::string_view value) noexcept {
  if (value.find('\r') != std::string_view::npos)
    return "carriage return in field value";
  auto nl = value.find('\n');
  std::string_view first = value.substr(0, nl);
  if (trim(first).size() != first.size())
    return "field value has surrounding whitespace";
  while (nl != std::string_view::npos) {
    auto next = value.find('\n', nl + 1);
    std::string_view line = value.substr(nl + 1, next == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : next - nl - 1);
    if (is_blank_line(line))
      return "blank continuation line in field value";
    nl = next;
  }
  return nullptr;
}

} // namespace

bool iequals(std::string_view a, std::string_view b) noexcept {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](char x, char y) { return ascii_lower(x) == ascii_lower(y); });
}

bool is_valid_field_name(std::string_view name) noexcept {
  if (name.empty() || name.front() == '#' || name.front() == '-')
    return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return c >= '!' && c <= '~' && c != ':'; });
}

const ControlField* ControlStanza::find(std::string_view name) const noexcept {
  for (const auto& f : fields_)
    if (iequals(f.name, name))
      return &f;
  return nullptr;
}

std::optional<std::string> ControlStanza::get(std::string_view name) const {
  if (const auto* f = find(name))
    return f->value;
  return std::nullopt;
}

void ControlStanza::append(std::string name, std::string value) {
  if (!is_valid_field_name(name))
    throw Error(ErrorCode::MalformedField, "invalid field name '" + name + "'");
  if (const char* why = unrenderable_value(value))
    throw Error(ErrorCode::MalformedField, name + ": " + why);
  if (contains(name))
    throw Error(ErrorCode::DuplicateField, "duplicate field '" + name + "'");
  bool multiline = value.find('\n') != std::string::npos;
  fields_.push_back(ControlField{std::move(name), std::move(value), multiline});
}

void ControlStanza::set(std::string name, std::string value) {
  for (auto& f : fields_) {
    if (iequals(f.name, name)) {
      if (const char* why = unrenderable_value(value))
        throw Error(ErrorCode::MalformedField, name + ": " + why);
      f.multiline = value.find('\n') != std::string::npos;
      f.value = std::move(value);
      return;
    }
  }
  append(std::move(name), std::move(value));
}

bool ControlStanza::erase(std::string_view name) noexcept {
  auto it = std::find_if(fields_.begin(), fields_.end(),
                         [&](const ControlField& f) { return iequals(f.name, name); });
  if (it == fields_.end())
    return false;
  fields_.erase(it);
  return true;
}

std::vector<ControlStanza> parse_stanzas(std::string_view text) {
  std::vector<ControlStanza> out;

  // Fields of the stanza being assembled; committed through append() once
  // their continuation lines are known.
  struct Pending {
    std::string name;
    std::string value;
    std::size_t line;
  };
  std::vector<Pending> pending;

  auto flush = [&] {
    if (pending.empty())
      return;
    ControlStanza stanza;
    for (auto& p : pending) {
      if (stanza.contains(p.name))
        throw Error(ErrorCode::DuplicateField,
                    "line " + std::to_string(p.line) + ": duplicate field '" +
                        p.name + "'",
                    p.line);
      try {
        stanza.append(std::move(p.name), std::move(p.value));
      } catch (const Error& e) {
        throw Error(e.code(),
                    "line " + std::to_string(p.line) + ": " + e.what(), p.line);
      }
    }
    out.push_back(std::move(stanza));
    pending.clear();
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);

    if (is_blank_line(line)) {
      flush();
      continue;
    }
    if (line.front() == '#')
      continue;

    if (is_blank(line.front())) {
      if (pending.empty())
        throw Error(ErrorCode::ContinuationWithoutField,
                    "line " + std::to_string(line_no) +
                        ": continuation line without a field",
                    line_no);
      auto& value = pending.back().value;
      value += '\n';
      value.append(line.substr(1));
      continue;
    }

    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::MalformedField,
                  "line " + std::to_string(line_no) + ": expected 'Field: value'",
                  line_no);
    std::string_view name = line.substr(0, colon);
    if (!is_valid_field_name(name))
      throw Error(ErrorCode::MalformedField,
                  "line " + std::to_string(line_no) + ": invalid field name '" +
                      std::string(name) + "'",
                  line_no);
    pending.push_back(Pending{std::string(name),
                              std::string(trim(line.substr(colon + 1))), line_no});
  }
  flush();
  return out;
}

std::string render_stanza(const ControlStanza& stanza) {
  std::string out;
  for (const auto& f : stanza.fields()) {
    out += f.name;
    out += ':';
    std::string_view value = f.value;
    auto nl = value.find('\n');
    std::string_view first = value.substr(0, nl);
    if (!first.empty()) {
      out += ' ';
      out += first;
    }
    out += '\n';
    while (nl != std::string_view::npos) {
      auto next = value.find('\n', nl + 1);
      out += ' ';
      out += value.substr(nl + 1, next == std::string_view::npos
                                      ? std::string_view::npos
                                      : next - nl - 1);
      out += '\n';
      nl = next;
    }
  }
  return out;
}

std::string render_stanzas(const std::vector<ControlStanza>& stanzas) {
  std::string out;
  bool first = true;
  for (const auto& s : stanzas) {
    if (s.empty())
      continue;
    if (!first)
      out += '\n';
    out += render_stanza(s);
    first = false;
  }
  return out;
}

const RelationExpr* PackageMeta::relation(RelationKind kind) const noexcept {
  auto it = relations.find(kind);
  return it == relations.end() ? nullptr : &it->second;
}

PackageMeta to_package_meta(const ControlStanza& stanza) {
  auto mandatory = [&](std::string_view name) -> const std::string& {
    const auto* f = stanza.find(name);
    if (f == nullptr)
      throw Error(ErrorCode::MissingMandatoryField,
                  "missing mandatory field '" + std::string(name) + "'");
    return f->value;
  };

  PackageMeta meta;
  meta.name = mandatory("Package");
  if (!is_valid_package_name(meta.name))
    throw Error(ErrorCode::BadPackageName,
                "invalid package name '" + meta.name + "'");

  try {
    meta.version = parse_version(mandatory("Version"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MissingMandatoryField)
      throw;
    throw e.with_context("Version");
  }

  meta.architecture = mandatory("Architecture");
  if (meta.architecture.empty())
    throw Error(ErrorCode::MissingMandatoryField,
                "empty mandatory field 'Architecture'");

  for (const auto& f : stanza.fields()) {
    if (iequals(f.name, "Package") || iequals(f.name, "Version") ||
        iequals(f.name, "Architecture"))
      continue;
    if (iequals(f.name, "Description")) {
      meta.description = f.value;
      continue;
    }
    if (auto kind = relation_kind_from_field(f.name)) {
      meta.relations.emplace(*kind, parse_relation(*kind, f.value));
      continue;
    }
    meta.extra.append(f.name, f.value);
  }
  return meta;
}

ControlStanza to_stanza(const PackageMeta& meta) {
  ControlStanza s;
  s.append("Package", meta.name);
  s.append("Version", meta.version.str());
  s.append("Architecture", meta.architecture);
  for (const auto& f : meta.extra.fields())
    s.append(f.name, f.value);
  for (const auto& [kind, expr] : meta.relations)
    s.append(std::string(field_name(kind)), render_relation(expr));
  if (meta.description)
    s.append("Description", *meta.description);
  return s;
}

} // namespace debgraph
