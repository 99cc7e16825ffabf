#include "semstore/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace semstore {

namespace {

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_scheme_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.';
}

}  // namespace

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::malformed_iri: return "malformed-iri";
    case Errc::unknown_prefix: return "unknown-prefix";
    case Errc::invalid_lexical: return "invalid-lexical";
    case Errc::unsupported_datatype: return "unsupported-datatype";
    case Errc::duplicate_prefix: return "duplicate-prefix";
    case Errc::malformed_prefix_line: return "malformed-prefix-line";
    case Errc::malformed_line: return "malformed-line";
    case Errc::membership_violation: return "membership-violation";
    case Errc::syntax_error: return "syntax-error";
    case Errc::unbound_select_variable: return "unbound-select-variable";
    case Errc::malformed_restriction: return "malformed-restriction";
    case Errc::iteration_limit_exceeded: return "iteration-limit-exceeded";
    case Errc::instance_too_large: return "instance-too-large";
    case Errc::io_error: return "io-error";
  }
  return "unknown-error";
}

Iri Iri::parse(std::string_view text) {
  auto colon = text.find(':');
  if (text.empty() || colon == std::string_view::npos) {
    throw Error(Errc::malformed_iri,
                "missing ':' separator in \"" + std::string(text) + "\"");
  }
  if (colon == 0) {
    throw Error(Errc::malformed_iri,
                "empty scheme in \"" + std::string(text) + "\"");
  }
  if (!is_alpha(text[0])) {
    throw Error(Errc::malformed_iri, "scheme must start with a letter in \"" +
                                         std::string(text) + "\"");
  }
  for (std::size_t i = 1; i < colon; ++i) {
    if (!is_scheme_char(text[i])) {
      throw Error(Errc::malformed_iri, "invalid scheme character in \"" +
                                           std::string(text) + "\"");
    }
  }
  Iri iri;
  iri.text_ = std::string(text);
  iri.scheme_len_ = static_cast<std::uint32_t>(colon);
  auto hash = text.find('#', colon + 1);
  iri.hash_pos_ =
      hash == std::string_view::npos ? -1 : static_cast<std::int32_t>(hash);
  return iri;
}

std::string_view Iri::hierarchical_part() const noexcept {
  std::size_t start = scheme_len_ + 1;
  std::size_t end = hash_pos_ < 0 ? text_.size() : std::size_t(hash_pos_);
  return std::string_view(text_).substr(start, end - start);
}

std::optional<std::string_view> Iri::fragment() const noexcept {
  if (hash_pos_ < 0) return std::nullopt;
  return std::string_view(text_).substr(std::size_t(hash_pos_) + 1);
}

namespace vocab {

namespace {
Iri make_vocab_iri(std::string_view ns, std::string_view local) {
  return Iri::parse(std::string(ns) + std::string(local));
}
}  // namespace

const Iri& xsd_string() {
  static const Iri iri = make_vocab_iri(kXsdNs, "string");
  return iri;
}
const Iri& xsd_integer() {
  static const Iri iri = make_vocab_iri(kXsdNs, "integer");
  return iri;
}
const Iri& xsd_double() {
  static const Iri iri = make_vocab_iri(kXsdNs, "double");
  return iri;
}
const Iri& xsd_boolean() {
  static const Iri iri = make_vocab_iri(kXsdNs, "boolean");
  return iri;
}
const Iri& xsd_date() {
  static const Iri iri = make_vocab_iri(kXsdNs, "date");
  return iri;
}
const Iri& rdf_type() {
  static const Iri iri = make_vocab_iri(kRdfNs, "type");
  return iri;
}
const Iri& rdfs_domain() {
  static const Iri iri = make_vocab_iri(kRdfsNs, "domain");
  return iri;
}
const Iri& rdfs_range() {
  static const Iri iri = make_vocab_iri(kRdfsNs, "range");
  return iri;
}
const Iri& rdfs_subclass_of() {
  static const Iri iri = make_vocab_iri(kRdfsNs, "subClassOf");
  return iri;
}
const Iri& owl_max_cardinality() {
  static const Iri iri = make_vocab_iri(kOwlNs, "maxCardinality");
  return iri;
}
const Iri& owl_cardinality() {
  static const Iri iri = make_vocab_iri(kOwlNs, "cardinality");
  return iri;
}

const Iri& datatype_iri(Datatype dt) {
  switch (dt) {
    case Datatype::string: return xsd_string();
    case Datatype::integer: return xsd_integer();
    case Datatype::real: return xsd_double();
    case Datatype::boolean: return xsd_boolean();
    case Datatype::date: return xsd_date();
  }
  return xsd_string();
}

std::optional<Datatype> datatype_from_iri(const Iri& iri) {
  if (iri == xsd_string()) return Datatype::string;
  if (iri == xsd_integer()) return Datatype::integer;
  if (iri == xsd_double()) return Datatype::real;
  if (iri == xsd_boolean()) return Datatype::boolean;
  if (iri == xsd_date()) return Datatype::date;
  return std::nullopt;
}

}  // namespace vocab

namespace {

[[noreturn]] void bad_lexical(std::string_view lexical, std::string_view why) {
  throw Error(Errc::invalid_lexical,
              "\"" + std::string(lexical) + "\": " + std::string(why));
}

// Sign plus digits, no leading zeros, "+" stripped, "-0" folded to "0".
// Purely textual so arbitrarily large integers survive.
std::string canonical_integer(std::string_view lexical) {
  if (lexical.empty()) bad_lexical(lexical, "empty integer");
  bool negative = false;
  std::size_t i = 0;
  if (lexical[0] == '+' || lexical[0] == '-') {
    negative = lexical[0] == '-';
    i = 1;
  }
  if (i == lexical.size()) bad_lexical(lexical, "no digits");
  for (std::size_t k = i; k < lexical.size(); ++k) {
    if (!is_digit(lexical[k])) bad_lexical(lexical, "not an integer");
  }
  while (i + 1 < lexical.size() && lexical[i] == '0') ++i;
  std::string digits(lexical.substr(i));
  if (digits == "0") return "0";
  return negative ? "-" + digits : digits;
}

// Normalized decimal-exponent form d[.ddd]E[-]e built from the shortest
// round-trip representation.
std::string canonical_double(std::string_view lexical) {
  if (lexical == "NaN" || lexical == "INF" || lexical == "-INF") {
    return std::string(lexical);
  }
  double value = 0;
  const char* first = lexical.data();
  const char* last = lexical.data() + lexical.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    bad_lexical(lexical, "not a double");
  }
  if (!std::isfinite(value)) bad_lexical(lexical, "not a finite double");
  if (value == 0) return std::signbit(value) ? "-0.0E0" : "0.0E0";

  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                           std::chars_format::scientific);
  std::string_view repr(buf.data(), res.ptr - buf.data());
  auto epos = repr.find_first_of("eE");
  std::string mantissa(repr.substr(0, epos));
  std::string_view exp_text = repr.substr(epos + 1);
  if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
  int exponent = 0;
  std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(),
                  exponent);
  if (mantissa.find('.') == std::string::npos) mantissa += ".0";
  return mantissa + "E" + std::to_string(exponent);
}

std::string canonical_boolean(std::string_view lexical) {
  if (lexical == "true" || lexical == "1") return "true";
  if (lexical == "false" || lexical == "0") return "false";
  bad_lexical(lexical, "not a boolean");
}

bool is_leap_year(int y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

std::string canonical_date(std::string_view lexical) {
  if (lexical.size() != 10 || lexical[4] != '-' || lexical[7] != '-') {
    bad_lexical(lexical, "date must be YYYY-MM-DD");
  }
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!is_digit(lexical[i])) bad_lexical(lexical, "date must be YYYY-MM-DD");
  }
  int year = (lexical[0] - '0') * 1000 + (lexical[1] - '0') * 100 +
             (lexical[2] - '0') * 10 + (lexical[3] - '0');
  int month = (lexical[5] - '0') * 10 + (lexical[6] - '0');
  int day = (lexical[8] - '0') * 10 + (lexical[9] - '0');
  if (year == 0) bad_lexical(lexical, "year 0000 is not a valid date");
  if (month < 1 || month > 12) bad_lexical(lexical, "month out of range");
  static constexpr std::array<int, 12> days_in_month = {31, 28, 31, 30, 31, 30,
                                                        31, 31, 30, 31, 30, 31};
  int max_day = days_in_month[month - 1];
  if (month == 2 && is_leap_year(year)) max_day = 29;
  if (day < 1 || day > max_day) bad_lexical(lexical, "day out of range");
  return std::string(lexical);
}

}  // namespace

Literal Literal::make(std::string_view lexical, const Iri& datatype) {
  auto dt = vocab::datatype_from_iri(datatype);
  if (!dt) {
    throw Error(Errc::unsupported_datatype, datatype.text());
  }
  return make(lexical, *dt);
}

Literal Literal::make(std::string_view lexical, Datatype datatype) {
  switch (datatype) {
    case Datatype::string:
      return Literal(std::string(lexical), datatype);
    case Datatype::integer:
      return Literal(canonical_integer(lexical), datatype);
    case Datatype::real:
      return Literal(canonical_double(lexical), datatype);
    case Datatype::boolean:
      return Literal(canonical_boolean(lexical), datatype);
    case Datatype::date:
      return Literal(canonical_date(lexical), datatype);
  }
  throw Error(Errc::unsupported_datatype, "unknown datatype tag");
}

Blank::Blank(std::string label) : label_(std::move(label)) {
  if (label_.empty()) {
    throw Error(Errc::malformed_line, "blank node label must be non-empty");
  }
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t seed = static_cast<std::size_t>(t.kind());
  auto mix = [&seed](std::size_t h) {
    seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  };
  switch (t.kind()) {
    case TermKind::iri:
      mix(std::hash<std::string>{}(t.iri().text()));
      break;
    case TermKind::literal:
      mix(std::hash<std::string>{}(t.literal().lexical()));
      mix(static_cast<std::size_t>(t.literal().datatype()));
      break;
    case TermKind::blank:
      mix(std::hash<std::string>{}(t.blank().label()));
      break;
  }
  return seed;
}

Triple::Triple(Term subject, Iri predicate, Term object)
    : subject_(std::move(subject)),
      predicate_(std::move(predicate)),
      object_(std::move(object)) {
  if (subject_.is_literal()) {
    throw Error(Errc::membership_violation,
                "literal \"" + subject_.literal().lexical() +
                    "\" cannot be a triple subject");
  }
}

Triple Triple::make(Term subject, Term predicate, Term object) {
  if (!predicate.is_iri()) {
    throw Error(Errc::membership_violation, "triple predicate must be an IRI");
  }
  return Triple(std::move(subject), predicate.iri(), std::move(object));
}

bool TriplePattern::matches(const Triple& t) const {
  if (subject && *subject != t.subject()) return false;
  if (predicate && !(predicate->is_iri() && predicate->iri() == t.predicate()))
    return false;
  if (object && *object != t.object()) return false;
  return true;
}

void PrefixMap::add(std::string label, std::string namespace_text, int line) {
  if (label.empty() ||
      label.find_first_of(": \t<>\"") != std::string::npos) {
    throw Error(Errc::malformed_prefix_line,
                "invalid prefix label \"" + label + "\"", line);
  }
  if (namespace_text.empty()) {
    throw Error(Errc::malformed_prefix_line,
                "empty namespace for prefix \"" + label + "\"", line);
  }
  if (by_label_.contains(label)) {
    throw Error(Errc::duplicate_prefix, "prefix \"" + label + "\" redefined",
                line);
  }
  by_label_.emplace(label, entries_.size());
  entries_.emplace_back(std::move(label), std::move(namespace_text));
}

bool PrefixMap::contains(std::string_view label) const {
  return by_label_.contains(std::string(label));
}

std::optional<std::string_view> PrefixMap::lookup(
    std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return std::string_view(entries_[it->second].second);
}

Iri PrefixMap::expand(std::string_view prefixed_name) const {
  auto colon = prefixed_name.find(':');
  if (colon == std::string_view::npos) {
    throw Error(Errc::malformed_iri, "prefixed name \"" +
                                         std::string(prefixed_name) +
                                         "\" has no ':'");
  }
  auto label = prefixed_name.substr(0, colon);
  auto local = prefixed_name.substr(colon + 1);
  auto ns = lookup(label);
  if (!ns) {
    throw Error(Errc::unknown_prefix,
                "prefix \"" + std::string(label) + "\" is not defined");
  }
  return Iri::parse(std::string(*ns) + std::string(local));
}

std::optional<std::string> PrefixMap::compress(const Iri& iri) const {
  const std::string& text = iri.text();
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : entries_) {
    if (text.starts_with(entry.second)) {
      if (!best || entry.second.size() > best->second.size()) best = &entry;
    }
  }
  if (!best) return std::nullopt;
  return best->first + ":" + text.substr(best->second.size());
}

}  // namespace semstore
