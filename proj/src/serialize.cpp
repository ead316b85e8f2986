#include "oscatter/serialize.hpp"

#include <sstream>

namespace oscatter {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const Json& j) {
  std::ostringstream os;
  os << std::hex << fnv1a64(j.dump());
  return os.str();
}

namespace {

Json complex_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const Complex& c : v) out.push_back({c.real(), c.imag()});
  return out;
}

std::vector<Complex> complex_list_from(const Json& j) {
  std::vector<Complex> v;
  v.reserve(j.size());
  for (const Json& e : j) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return v;
}

}  // namespace

Json to_json(const SlowGrid& g) {
  return {{"half_width", g.half_width}, {"nodes", g.n}};
}

SlowGrid grid_from_json(const Json& j) {
  return SlowGrid(j.at("half_width").get<double>(), j.at("nodes").get<int>());
}

Json to_json(const SlowField& f) {
  return {{"grid", to_json(f.grid)}, {"values", complex_list(f.values)}};
}

SlowField field_from_json(const Json& j) {
  return SlowField(grid_from_json(j.at("grid")), complex_list_from(j.at("values")));
}

Json to_json(const CellSpectrum& s) {
  return {{"periods", s.cell().periods},
          {"max_mode", s.max_mode()},
          {"coeffs", complex_list(s.coeffs())}};
}

CellSpectrum spectrum_from_json(const Json& j) {
  CellSpectrum s(PeriodicCell(j.at("periods").get<std::vector<double>>()),
                 j.at("max_mode").get<int>());
  std::vector<Complex> c = complex_list_from(j.at("coeffs"));
  if (c.size() != s.coeffs().size()) throw IoFailure("spectrum size mismatch");
  s.coeffs() = std::move(c);
  return s;
}

Json to_json(const Amplitude& a) {
  return {{"energy", a.energy},
          {"incident", a.incident},
          {"directions", a.directions},
          {"values", complex_list(a.values)}};
}

Amplitude amplitude_from_json(const Json& j) {
  Amplitude a;
  a.energy = j.at("energy").get<double>();
  a.incident = j.at("incident").get<double>();
  a.directions = j.at("directions").get<std::vector<double>>();
  a.values = complex_list_from(j.at("values"));
  return a;
}

Json to_json(const TwoScalePotential& q) {
  Json spectra = Json::array();
  for (int i = 0; i < q.grid().n; ++i) spectra.push_back(to_json(q.spectrum_at(i)));
  return {{"grid", to_json(q.grid())},
          {"support_radius", q.support_radius()},
          {"spectra", spectra}};
}

TwoScalePotential potential_from_json(const Json& j) {
  std::vector<CellSpectrum> spectra;
  for (const Json& s : j.at("spectra")) spectra.push_back(spectrum_from_json(s));
  return TwoScalePotential(grid_from_json(j.at("grid")),
                           j.at("support_radius").get<double>(), std::move(spectra));
}

Json to_json(const AsymptoticSolution& sol) {
  Json terms = Json::array();
  for (const ExpansionTerm& t : sol.terms) {
    Json phi = Json::array();
    for (const SlowField& m : t.phi) phi.push_back(complex_list(m.values));
    terms.push_back({{"order", t.order}, {"psi", to_json(t.psi)}, {"phi", phi}});
  }
  Json amps = Json::array();
  for (const Amplitude& a : sol.term_amplitudes) amps.push_back(to_json(a));
  return {{"schema_version", 1},
          {"kind", sol.kind == ProblemKind::source ? "source" : "plane_wave"},
          {"energy", sol.energy},
          {"kappa_hat", sol.kappa_hat},
          {"order", sol.order},
          {"potential", to_json(sol.potential)},
          {"source", to_json(sol.source)},
          {"terms", terms},
          {"term_amplitudes", amps}};
}

AsymptoticSolution solution_from_json(const Json& j) {
  AsymptoticSolution sol;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "source")
    sol.kind = ProblemKind::source;
  else if (kind == "plane_wave")
    sol.kind = ProblemKind::plane_wave;
  else
    throw IoFailure("unknown problem kind: " + kind);
  sol.energy = j.at("energy").get<double>();
  sol.kappa_hat = j.at("kappa_hat").get<double>();
  sol.order = j.at("order").get<int>();
  sol.potential = potential_from_json(j.at("potential"));
  sol.source = field_from_json(j.at("source"));
  for (const Json& tj : j.at("terms")) {
    ExpansionTerm t;
    t.order = tj.at("order").get<int>();
    t.psi = field_from_json(tj.at("psi"));
    for (const Json& mj : tj.at("phi"))
      t.phi.emplace_back(sol.potential.grid(), complex_list_from(mj));
    sol.terms.push_back(std::move(t));
  }
  for (const Json& aj : j.at("term_amplitudes"))
    sol.term_amplitudes.push_back(amplitude_from_json(aj));
  return sol;
}

std::string expansion_cache_key(const AsymptoticSolution& sol) {
  Json key = {{"potential", hash_hex(to_json(sol.potential))},
              {"energy", sol.energy},
              {"order", sol.order},
              {"kind", sol.kind == ProblemKind::source ? "source" : "plane_wave"},
              {"kappa_hat", sol.kappa_hat},
              {"source", hash_hex(to_json(sol.source))}};
  return hash_hex(key);
}

}  // namespace oscatter
