#include "semstore/syntax.hpp"

#include <fstream>
#include <sstream>

namespace semstore {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_skippable(std::string_view line) {
  auto t = trim(line);
  return t.empty() || t.front() == '#';
}

[[noreturn]] void bad_line(std::string_view why) {
  throw Error(Errc::malformed_line, std::string(why));
}

Iri resolve_datatype(std::string_view text, const PrefixMap& prefixes) {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    return Iri::parse(text.substr(1, text.size() - 2));
  }
  return resolve_curie_or_iri(text, prefixes);
}

Term parse_angle_comma_term(std::string_view raw, const PrefixMap& prefixes) {
  auto text = trim(raw);
  if (text.empty()) bad_line("empty term");
  if (text.front() == '"') {
    std::size_t pos = 0;
    Term term = parse_literal_token(text, pos, prefixes);
    if (!trim(text.substr(pos)).empty()) {
      bad_line("trailing characters after literal");
    }
    return term;
  }
  if (text.starts_with("_:")) {
    return Term(Blank(std::string(text.substr(2))));
  }
  return Term(resolve_curie_or_iri(text, prefixes));
}

// Splits the inside of <...> on commas that are outside quoted literals.
std::vector<std::string_view> split_top_level(std::string_view inner) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  bool in_quote = false;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    char c = inner[i];
    if (in_quote) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_quote = false;
      }
      continue;
    }
    if (c == '"') {
      in_quote = true;
    } else if (c == ',') {
      parts.push_back(inner.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(inner.substr(start));
  return parts;
}

void escape_into(std::string& out, std::string_view lexical) {
  for (char c : lexical) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
}

// --- N-Triples subset scanner ---

struct NtScanner {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }

  Iri scan_iri() {
    skip_ws();
    if (pos >= s.size() || s[pos] != '<') bad_line("expected '<'");
    auto close = s.find('>', pos);
    if (close == std::string_view::npos) bad_line("unterminated IRI");
    auto text = s.substr(pos + 1, close - pos - 1);
    pos = close + 1;
    return Iri::parse(text);
  }

  Term scan_blank() {
    if (!s.substr(pos).starts_with("_:")) bad_line("expected '_:'");
    pos += 2;
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') ++pos;
    return Term(Blank(std::string(s.substr(start, pos - start))));
  }

  Term scan_subject() {
    skip_ws();
    if (pos < s.size() && s[pos] == '_') return scan_blank();
    return Term(scan_iri());
  }

  Term scan_object(const PrefixMap& no_prefixes) {
    skip_ws();
    if (pos >= s.size()) bad_line("missing object term");
    if (s[pos] == '<') return Term(scan_iri());
    if (s[pos] == '_') return scan_blank();
    if (s[pos] == '"') return parse_literal_token(s, pos, no_prefixes);
    bad_line("unrecognized object term");
  }
};

Triple parse_ntriples_line(std::string_view line) {
  static const PrefixMap no_prefixes;
  auto text = trim(line);
  if (text.empty() || text.back() != '.') {
    bad_line("statement must end with '.'");
  }
  text.remove_suffix(1);
  NtScanner scan{text};
  Term subject = scan.scan_subject();
  Iri predicate = scan.scan_iri();
  Term object = scan.scan_object(no_prefixes);
  if (!scan.at_end()) bad_line("trailing characters after object");
  return Triple(std::move(subject), std::move(predicate), std::move(object));
}

template <typename LineParser>
ParseResult parse_document(const Document& doc, OnError on_error,
                           LineParser&& parse_line) {
  ParseResult result;
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const std::string& line = doc.lines[i];
    if (is_skippable(line)) continue;
    try {
      result.triples.push_back(parse_line(line));
    } catch (const Error& e) {
      if (on_error == OnError::raise) {
        throw Error(e.code(), e.what(), line_no);
      }
      result.issues.push_back({line_no, e.code(), e.what()});
    }
  }
  return result;
}

}  // namespace

Iri resolve_curie_or_iri(std::string_view text, const PrefixMap& prefixes) {
  auto colon = text.find(':');
  if (colon != std::string_view::npos &&
      prefixes.contains(text.substr(0, colon))) {
    return prefixes.expand(text);
  }
  try {
    return Iri::parse(text);
  } catch (const Error&) {
    // looks like a CURIE but the label is unregistered and the text is not
    // a valid IRI either
    if (colon != std::string_view::npos) {
      throw Error(Errc::unknown_prefix,
                  "\"" + std::string(text.substr(0, colon)) +
                      "\" is not a defined prefix and \"" + std::string(text) +
                      "\" is not a valid IRI");
    }
    throw;
  }
}

Term parse_literal_token(std::string_view s, std::size_t& pos,
                         const PrefixMap& prefixes) {
  std::string lexical;
  ++pos;  // opening quote
  bool closed = false;
  while (pos < s.size()) {
    char c = s[pos];
    if (c == '\\') {
      if (pos + 1 >= s.size() || (s[pos + 1] != '"' && s[pos + 1] != '\\')) {
        bad_line("unsupported escape sequence in literal");
      }
      lexical.push_back(s[pos + 1]);
      pos += 2;
      continue;
    }
    if (c == '"') {
      closed = true;
      ++pos;
      break;
    }
    lexical.push_back(c);
    ++pos;
  }
  if (!closed) bad_line("unterminated string literal");
  if (pos + 1 < s.size() && s[pos] == '^' && s[pos + 1] == '^') {
    pos += 2;
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '<') {
      auto close = s.find('>', pos);
      if (close == std::string_view::npos) {
        bad_line("unterminated datatype IRI");
      }
      pos = close + 1;
    } else {
      while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') ++pos;
    }
    auto dt_text = s.substr(start, pos - start);
    if (dt_text.empty()) bad_line("empty datatype after ^^");
    return Term(Literal::make(lexical, resolve_datatype(dt_text, prefixes)));
  }
  return Term(Literal::make(lexical, Datatype::string));
}

Document Document::from_text(std::string_view text, DocumentFormat format) {
  Document doc;
  doc.format = format;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto line = nl == std::string_view::npos ? text.substr(start)
                                             : text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    doc.lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  // A trailing newline does not add an empty record.
  if (!doc.lines.empty() && doc.lines.back().empty()) doc.lines.pop_back();
  return doc;
}

Document Document::from_file(const std::filesystem::path& path,
                             DocumentFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), format);
}

PrefixMap parse_prefix_map(const Document& doc) {
  PrefixMap map;
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    auto line = trim(doc.lines[i]);
    if (line.empty() || line.front() == '#') continue;
    if (!line.starts_with("prefix ") && !line.starts_with("prefix\t")) {
      throw Error(Errc::malformed_prefix_line,
                  "expected `prefix <label>: <iri>`", line_no);
    }
    auto rest = trim(line.substr(7));
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw Error(Errc::malformed_prefix_line, "missing ':' after label",
                  line_no);
    }
    auto label = trim(rest.substr(0, colon));
    auto ns = trim(rest.substr(colon + 1));
    map.add(std::string(label), std::string(ns), line_no);
  }
  return map;
}

Triple parse_triple_line(std::string_view line, const PrefixMap& prefixes) {
  auto text = trim(line);
  if (text.size() < 2 || text.front() != '<' || text.back() != '>') {
    bad_line("triple must be wrapped in <...>");
  }
  auto parts = split_top_level(text.substr(1, text.size() - 2));
  if (parts.size() != 3) {
    bad_line("expected 3 comma-separated terms, got " +
             std::to_string(parts.size()));
  }
  Term subject = parse_angle_comma_term(parts[0], prefixes);
  Term predicate = parse_angle_comma_term(parts[1], prefixes);
  Term object = parse_angle_comma_term(parts[2], prefixes);
  return Triple::make(std::move(subject), std::move(predicate),
                      std::move(object));
}

ParseResult parse_triples(const Document& doc, const PrefixMap& prefixes,
                          OnError on_error) {
  return parse_document(doc, on_error, [&prefixes](const std::string& line) {
    return parse_triple_line(line, prefixes);
  });
}

ParseResult parse_ntriples(const Document& doc, OnError on_error) {
  return parse_document(doc, on_error, [](const std::string& line) {
    return parse_ntriples_line(line);
  });
}

std::string serialize_term(const Term& term, const PrefixMap& prefixes) {
  switch (term.kind()) {
    case TermKind::iri: {
      if (auto curie = prefixes.compress(term.iri())) return *curie;
      return term.iri().text();
    }
    case TermKind::blank:
      return "_:" + term.blank().label();
    case TermKind::literal: {
      const Literal& lit = term.literal();
      std::string out = "\"";
      escape_into(out, lit.lexical());
      out += "\"^^";
      if (auto curie = prefixes.compress(lit.datatype_iri())) {
        out += *curie;
      } else {
        out += lit.datatype_iri().text();
      }
      return out;
    }
  }
  return {};
}

std::string serialize_triple(const Triple& triple, const PrefixMap& prefixes) {
  return "<" + serialize_term(triple.subject(), prefixes) + ", " +
         serialize_term(Term(triple.predicate()), prefixes) + ", " +
         serialize_term(triple.object(), prefixes) + ">";
}

}  // namespace semstore
