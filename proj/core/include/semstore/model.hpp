#pragma once

// Core RDF data model: IRIs, typed literals, blank nodes, triples, triple
// patterns and prefix maps. All types are immutable values after
// construction and safe to share across threads.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "semstore/error.hpp"

namespace semstore {

/// Absolute IRI of the form  <scheme> ":" <hierarchical part> ["#" <fragment>].
/// Equality is byte equality of the full text; no normalization is applied.
class Iri {
 public:
  /// Parses `text` and splits out scheme / hierarchical part / fragment.
  /// Throws Error{malformed_iri} when there is no ":", the scheme is empty,
  /// does not start with a letter, or contains a character outside
  /// [A-Za-z0-9+.-].
  static Iri parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  std::string_view scheme() const noexcept {
    return std::string_view(text_).substr(0, scheme_len_);
  }
  std::string_view hierarchical_part() const noexcept;
  /// Fragment without the "#"; nullopt when the IRI has no "#" at all.
  std::optional<std::string_view> fragment() const noexcept;

  friend bool operator==(const Iri& a, const Iri& b) noexcept {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) noexcept {
    return a.text_ <=> b.text_;
  }

 private:
  Iri() = default;

  std::string text_;
  std::uint32_t scheme_len_ = 0;
  std::int32_t hash_pos_ = -1;  // index of '#', -1 if absent
};

/// Construction function mirroring the library naming for parsers.
inline Iri make_iri(std::string_view text) { return Iri::parse(text); }

enum class Datatype : std::uint8_t {
  string,
  integer,
  real,  // xsd:double
  boolean,
  date,
};

namespace vocab {

inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kRdfNs =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwlNs = "http://www.w3.org/2002/07/owl#";

const Iri& xsd_string();
const Iri& xsd_integer();
const Iri& xsd_double();
const Iri& xsd_boolean();
const Iri& xsd_date();
const Iri& rdf_type();
const Iri& rdfs_domain();
const Iri& rdfs_range();
const Iri& rdfs_subclass_of();
const Iri& owl_max_cardinality();
const Iri& owl_cardinality();

const Iri& datatype_iri(Datatype dt);
/// nullopt when the IRI is not one of the five supported datatypes.
std::optional<Datatype> datatype_from_iri(const Iri& iri);

}  // namespace vocab

/// Typed literal value. The lexical form is canonical for its datatype:
/// integers carry no sign prefix "+" and no leading zeros, doubles use the
/// normalized form d.dddE±e, booleans are "true"/"false", dates YYYY-MM-DD,
/// strings are kept verbatim.
class Literal {
 public:
  /// Canonicalizing constructor. Throws Error{invalid_lexical} when `lexical`
  /// does not parse under `datatype` and Error{unsupported_datatype} when
  /// `datatype` is not one of the five supported XSD types.
  static Literal make(std::string_view lexical, const Iri& datatype);
  static Literal make(std::string_view lexical, Datatype datatype);

  const std::string& lexical() const noexcept { return lexical_; }
  Datatype datatype() const noexcept { return datatype_; }
  const Iri& datatype_iri() const { return vocab::datatype_iri(datatype_); }

  friend bool operator==(const Literal&, const Literal&) noexcept = default;
  friend std::strong_ordering operator<=>(const Literal& a,
                                          const Literal& b) noexcept {
    if (auto c = a.datatype_ <=> b.datatype_; c != 0) return c;
    return a.lexical_ <=> b.lexical_;
  }

 private:
  Literal(std::string lexical, Datatype dt)
      : lexical_(std::move(lexical)), datatype_(dt) {}

  std::string lexical_;
  Datatype datatype_;
};

inline Literal make_literal(std::string_view lexical, const Iri& datatype) {
  return Literal::make(lexical, datatype);
}

/// Blank node; an ordinary constant scoped to one graph, with no
/// existential semantics.
class Blank {
 public:
  explicit Blank(std::string label);
  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const Blank&, const Blank&) noexcept = default;
  friend std::strong_ordering operator<=>(const Blank&,
                                          const Blank&) noexcept = default;

 private:
  std::string label_;
};

enum class TermKind : std::uint8_t { iri, literal, blank };

/// Tagged union of Iri | Literal | Blank. Comparison is kind-sensitive: an
/// Iri never equals a Literal with identical text.
class Term {
 public:
  Term(Iri iri) : value_(std::move(iri)) {}
  Term(Literal literal) : value_(std::move(literal)) {}
  Term(Blank blank) : value_(std::move(blank)) {}

  TermKind kind() const noexcept {
    return static_cast<TermKind>(value_.index());
  }
  bool is_iri() const noexcept { return kind() == TermKind::iri; }
  bool is_literal() const noexcept { return kind() == TermKind::literal; }
  bool is_blank() const noexcept { return kind() == TermKind::blank; }

  const Iri& iri() const { return std::get<Iri>(value_); }
  const Literal& literal() const { return std::get<Literal>(value_); }
  const Blank& blank() const { return std::get<Blank>(value_); }

  friend bool operator==(const Term&, const Term&) noexcept = default;
  friend std::strong_ordering operator<=>(const Term& a,
                                          const Term& b) noexcept {
    if (auto c = a.value_.index() <=> b.value_.index(); c != 0) return c;
    switch (a.kind()) {
      case TermKind::iri:
        return a.iri() <=> b.iri();
      case TermKind::literal:
        return a.literal() <=> b.literal();
      case TermKind::blank:
        return a.blank() <=> b.blank();
    }
    return std::strong_ordering::equal;
  }

 private:
  std::variant<Iri, Literal, Blank> value_;
};

inline bool term_equals(const Term& a, const Term& b) noexcept {
  return a == b;
}

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

/// Ordered statement <subject, predicate, object>. The subject is an Iri or
/// Blank, the predicate always an Iri, the object any term; literals may
/// appear in object position only.
class Triple {
 public:
  /// Throws Error{membership_violation} when the subject is a Literal.
  Triple(Term subject, Iri predicate, Term object);
  /// Validating variant; additionally rejects non-Iri predicates.
  static Triple make(Term subject, Term predicate, Term object);

  const Term& subject() const noexcept { return subject_; }
  const Iri& predicate() const noexcept { return predicate_; }
  const Term& object() const noexcept { return object_; }

  friend bool operator==(const Triple&, const Triple&) noexcept = default;
  friend std::strong_ordering operator<=>(const Triple& a,
                                          const Triple& b) noexcept {
    if (auto c = a.subject_ <=> b.subject_; c != 0) return c;
    if (auto c = a.predicate_ <=> b.predicate_; c != 0) return c;
    return a.object_ <=> b.object_;
  }

 private:
  Term subject_;
  Iri predicate_;
  Term object_;
};

/// Triple pattern with independently bound or wildcard slots. A pattern with
/// zero wildcards matches at most one triple.
struct TriplePattern {
  std::optional<Term> subject;
  std::optional<Term> predicate;
  std::optional<Term> object;

  static TriplePattern any() { return {}; }
  static TriplePattern fully_bound(const Triple& t) {
    return {t.subject(), Term(t.predicate()), t.object()};
  }

  int bound_count() const noexcept {
    return int(subject.has_value()) + int(predicate.has_value()) +
           int(object.has_value());
  }
  bool matches(const Triple& t) const;
};

/// Ordered prefix-label -> namespace-text mapping. Later lookups resolve by
/// label; serialization compresses by longest matching namespace.
class PrefixMap {
 public:
  /// Throws Error{duplicate_prefix} on a repeated label and
  /// Error{malformed_prefix_line} on an empty/invalid label or empty
  /// namespace.
  void add(std::string label, std::string namespace_text, int line = 0);

  bool contains(std::string_view label) const;
  std::optional<std::string_view> lookup(std::string_view label) const;

  /// Expands "label:local" (split at the first ":"). Throws
  /// Error{unknown_prefix} for an unregistered label; malformed-iri
  /// propagates from Iri::parse.
  Iri expand(std::string_view prefixed_name) const;

  /// Longest-matching-namespace compression; nullopt when no registered
  /// namespace is a prefix of the IRI text.
  std::optional<std::string> compress(const Iri& iri) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::unordered_map<std::string, std::size_t> by_label_;
};

inline Iri expand_curie(std::string_view prefixed_name,
                        const PrefixMap& prefixes) {
  return prefixes.expand(prefixed_name);
}

}  // namespace semstore
