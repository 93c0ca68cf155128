#ifndef COMMCI_REPORT_HPP
#define COMMCI_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "commci/cidecide.hpp"
#include "commci/koszul.hpp"

namespace commci {

using nlohmann::json;

inline void to_json(json& j, const GroebnerStats& s) {
  j = json{{"pairs", s.pairs}, {"zero_reductions", s.zero_reductions}, {"max_degree", s.max_degree},
           {"seconds", s.seconds}};
}
inline void from_json(const json& j, GroebnerStats& s) {
  j.at("pairs").get_to(s.pairs);
  j.at("zero_reductions").get_to(s.zero_reductions);
  j.at("max_degree").get_to(s.max_degree);
  j.at("seconds").get_to(s.seconds);
}

inline void to_json(json& j, const Position& p) { j = json::array({p.i, p.j}); }
inline void from_json(const json& j, Position& p) {
  p.i = j.at(0).get<int>();
  p.j = j.at(1).get<int>();
}

inline void to_json(json& j, const PatternCheck& c) {
  j = json{{"pos", c.pos}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}};
}
inline void from_json(const json& j, PatternCheck& c) {
  j.at("pos").get_to(c.pos);
  j.at("expected").get_to(c.expected);
  j.at("actual").get_to(c.actual);
  j.at("ok").get_to(c.ok);
}

inline void to_json(json& j, const MembershipCheck& c) { j = json{{"pos", c.pos}, {"member", c.member}}; }
inline void from_json(const json& j, MembershipCheck& c) {
  j.at("pos").get_to(c.pos);
  j.at("member").get_to(c.member);
}

inline void to_json(json& j, const WitnessReport& w) {
  j = json{{"n", w.n},
           {"field", w.field},
           {"order", w.order},
           {"substitution", w.substitution},
           {"surviving", w.surviving},
           {"pattern", w.pattern},
           {"memberships", w.memberships},
           {"bounding_generators", w.bounding_generators},
           {"bounding_codim", w.bounding_codim ? json(*w.bounding_codim) : json(nullptr)},
           {"subsequence_length", w.subsequence_length},
           {"conclusion", w.conclusion},
           {"failure", w.failure}};
}
inline void from_json(const json& j, WitnessReport& w) {
  j.at("n").get_to(w.n);
  j.at("field").get_to(w.field);
  j.at("order").get_to(w.order);
  j.at("substitution").get_to(w.substitution);
  j.at("surviving").get_to(w.surviving);
  j.at("pattern").get_to(w.pattern);
  j.at("memberships").get_to(w.memberships);
  j.at("bounding_generators").get_to(w.bounding_generators);
  const auto& bc = j.at("bounding_codim");
  w.bounding_codim = bc.is_null() ? std::nullopt : std::optional<long>(bc.get<long>());
  j.at("subsequence_length").get_to(w.subsequence_length);
  j.at("conclusion").get_to(w.conclusion);
  j.at("failure").get_to(w.failure);
}

namespace detail {
inline json optional_long(const std::optional<long>& v) { return v ? json(*v) : json(nullptr); }
inline std::optional<long> read_optional_long(const json& j) {
  return j.is_null() ? std::nullopt : std::optional<long>(j.get<long>());
}
}  // namespace detail

inline void to_json(json& j, const CIReport& r) {
  j = json{{"group", group_name(r.group)},
           {"n", r.n},
           {"genus", r.genus},
           {"field", r.field},
           {"order", r.order},
           {"nvars", r.nvars},
           {"generators", r.generators},
           {"unit_relations", r.unit_relations},
           {"dim", detail::optional_long(r.dim)},
           {"codim", detail::optional_long(r.codim)},
           {"verdict", verdict_name(r.verdict)},
           {"exterior_factors", r.exterior_factors},
           {"structure", r.structure},
           {"certificate", r.certificate},
           {"conjectural", r.conjectural},
           {"source", r.source},
           {"note", r.note},
           {"witness", r.witness ? json(*r.witness) : json(nullptr)},
           {"stats", r.stats},
           {"wall_seconds", r.wall_seconds}};
}
inline void from_json(const json& j, CIReport& r) {
  r.group = parse_group(j.at("group").get<std::string>());
  j.at("n").get_to(r.n);
  j.at("genus").get_to(r.genus);
  j.at("field").get_to(r.field);
  j.at("order").get_to(r.order);
  j.at("nvars").get_to(r.nvars);
  j.at("generators").get_to(r.generators);
  j.at("unit_relations").get_to(r.unit_relations);
  r.dim = detail::read_optional_long(j.at("dim"));
  r.codim = detail::read_optional_long(j.at("codim"));
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  j.at("exterior_factors").get_to(r.exterior_factors);
  j.at("structure").get_to(r.structure);
  j.at("certificate").get_to(r.certificate);
  j.at("conjectural").get_to(r.conjectural);
  j.at("source").get_to(r.source);
  j.at("note").get_to(r.note);
  const auto& w = j.at("witness");
  r.witness = w.is_null() ? std::nullopt : std::optional<WitnessReport>(w.get<WitnessReport>());
  j.at("stats").get_to(r.stats);
  j.at("wall_seconds").get_to(r.wall_seconds);
}

inline void to_json(json& j, const KoszulSliceReport& s) {
  j = json{{"i", s.i}, {"w", s.w}, {"chain_dims", s.chain_dims}, {"h_dim", s.complete ? json(s.h_dim) : json(nullptr)},
           {"status", s.status}};
}
inline void from_json(const json& j, KoszulSliceReport& s) {
  j.at("i").get_to(s.i);
  j.at("w").get_to(s.w);
  j.at("chain_dims").get_to(s.chain_dims);
  j.at("status").get_to(s.status);
  s.complete = s.status == "complete";
  s.h_dim = j.at("h_dim").is_null() ? 0 : j.at("h_dim").get<long>();
}

}  // namespace commci

#endif
