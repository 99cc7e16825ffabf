#pragma once

// Text formats: the angle-comma triple format (".trp"), an N-Triples subset
// (".nt") and prefix-map files (".pfx"). Lines starting with "#" are
// comments, blank lines are skipped, line numbers are 1-based.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "semstore/model.hpp"

namespace semstore {

enum class DocumentFormat { angle_comma, ntriples_subset };

struct Document {
  std::vector<std::string> lines;
  DocumentFormat format = DocumentFormat::angle_comma;

  static Document from_text(std::string_view text, DocumentFormat format);
  /// Throws Error{io_error} when the file cannot be read.
  static Document from_file(const std::filesystem::path& path,
                            DocumentFormat format);
};

struct ParseIssue {
  int line = 0;
  Errc code = Errc::malformed_line;
  std::string message;
};

struct ParseResult {
  std::vector<Triple> triples;  // file order, duplicates preserved
  std::vector<ParseIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
};

enum class OnError {
  raise,    // throw on the first bad line
  collect,  // record every bad line, keep parsing
};

/// Parses `prefix <label>: <iri-text>` lines. Duplicate labels and malformed
/// lines raise with the offending line number.
PrefixMap parse_prefix_map(const Document& doc);

/// Parses one angle-comma statement `<t1, t2, t3>`. Each ti is a CURIE, a
/// full IRI, `_:label`, or a quoted literal with an optional ^^datatype
/// suffix (default datatype xsd:string).
Triple parse_triple_line(std::string_view line, const PrefixMap& prefixes);

ParseResult parse_triples(const Document& doc, const PrefixMap& prefixes,
                          OnError on_error = OnError::raise);

/// N-Triples subset:
///   (<iri> | _:label) <iri> (<iri> | "lexical"(^^<iri>)? | _:label) .
ParseResult parse_ntriples(const Document& doc,
                           OnError on_error = OnError::raise);

/// CURIE when the text before the first ':' is a registered prefix label,
/// full IRI otherwise.
Iri resolve_curie_or_iri(std::string_view text, const PrefixMap& prefixes);

/// Parses a quoted literal (optional ^^datatype suffix) starting at
/// s[pos] == '"'; advances pos past the consumed characters.
Term parse_literal_token(std::string_view s, std::size_t& pos,
                         const PrefixMap& prefixes);

/// Term in the angle-comma surface syntax, compressing IRIs to CURIEs by
/// longest matching namespace.
std::string serialize_term(const Term& term, const PrefixMap& prefixes);

/// Angle-comma form; parse_triple_line(serialize_triple(t, P), P) == t for
/// prefix maps covering t's namespaces.
std::string serialize_triple(const Triple& triple, const PrefixMap& prefixes);

}  // namespace semstore
