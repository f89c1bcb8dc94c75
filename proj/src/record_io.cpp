#include "pegg/record_io.hpp"

#include <stdexcept>

namespace pegg {

using nlohmann::json;

namespace {

Word word_field(const json& j, const char* key) {
  const Natural n = natural_from_string(j.at(key).get<std::string>());
  return to_word(n);
}

Natural natural_field(const json& j, const char* key) { return natural_from_string(j.at(key).get<std::string>()); }

}  // namespace

json to_json(const OriginalEquation& eq) {
  return {
      {"exponents", {eq.exps.x, eq.exps.y, eq.exps.z}},
      {"permutation", to_string(eq.perm)},
      {"d", std::to_string(eq.d)},
      {"e", std::to_string(eq.e)},
      {"f", std::to_string(eq.f)},
      {"a", std::to_string(eq.a)},
      {"b", std::to_string(eq.b)},
      {"c", std::to_string(eq.c)},
      {"original", render(eq)},
  };
}

json to_json(const ResultantEquation& res, const PeggReport& rep) {
  return {
      {"N", res.N.get_str()},
      {"A", res.A.get_str()},
      {"B", res.B.get_str()},
      {"C", res.C.get_str()},
      {"D", res.D.get_str()},
      {"E", res.E.get_str()},
      {"F", res.F.get_str()},
      {"resultant", render(res)},
      {"gcd", rep.gcd.get_str()},
      {"pegg_value", rep.pegg_value.get_str()},
      {"pegg_power", rep.pegg_power},
      {"log2_size", rep.log2_size},
      {"stolen", rep.stolen},
  };
}

json to_json(const SearchRecord& rec) {
  json j = to_json(rec.original);
  j.update(to_json(rec.resultant, rec.report));
  return j;
}

SearchRecord record_from_json(const json& j) {
  OriginalEquation eq;
  const auto ex = j.at("exponents");
  eq.exps = {ex.at(0).get<Word>(), ex.at(1).get<Word>(), ex.at(2).get<Word>()};
  eq.perm = permutation_from_string(j.at("permutation").get<std::string>());
  eq.d = word_field(j, "d");
  eq.e = word_field(j, "e");
  eq.f = word_field(j, "f");
  eq.a = word_field(j, "a");
  eq.b = word_field(j, "b");
  eq.c = word_field(j, "c");

  SearchRecord rec;
  rec.original = eq;
  auto& r = rec.resultant;
  r.exps = eq.exps;
  r.source = eq;
  r.N = natural_field(j, "N");
  r.A = natural_field(j, "A");
  r.B = natural_field(j, "B");
  r.C = natural_field(j, "C");
  r.D = natural_field(j, "D");
  r.E = natural_field(j, "E");
  r.F = natural_field(j, "F");
  if (!identity_holds(eq) || !resultant_consistent(r)) throw std::runtime_error("record does not verify");
  rec.report = pegg_report(r);
  if (rec.report.pegg_value != natural_field(j, "pegg_value")) throw std::runtime_error("record Pegg Value mismatch");
  return rec;
}

std::string to_json_line(const SearchRecord& rec) { return to_json(rec).dump(); }

}  // namespace pegg
