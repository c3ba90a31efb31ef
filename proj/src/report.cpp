#include "fpsets/report.hpp"

#include <sstream>

namespace fpsets {

Json to_json(const DecompReport& r) {
  Json j;
  j["dim"] = r.dim;
  j["p"] = r.p;
  Json summands = Json::array();
  for (const auto& s : r.summands) {
    Json js;
    js["dim"] = s.dim;
    js["projective"] = s.projective;
    summands.push_back(js);
  }
  j["summands"] = summands;
  j["np"] = r.np;
  j["inconclusive"] = r.inconclusive;
  return j;
}

Json to_json(const KappaResult& r) {
  Json j;
  if (r.value)
    j["value"] = *r.value;
  else
    j["value"] = nullptr;
  j["tested_up_to"] = r.tested_up_to;
  Json t = Json::array();
  for (const auto& [u, has] : r.trajectory) {
    Json e;
    e["u"] = u;
    e["has_projective_summand"] = has;
    t.push_back(e);
  }
  j["trajectory"] = t;
  return j;
}

Json to_json(const FpsReport& r, int q) {
  Json j;
  j["set"] = r.set.str();
  j["p"] = r.p;
  j["q"] = q;
  j["closed"] = r.closed;
  j["exact"] = r.exact;
  j["projective"] = r.projective;
  if (r.fixed_point_set == Verdict::unknown)
    j["fixed_point_set"] = nullptr;
  else
    j["fixed_point_set"] = r.fixed_point_set == Verdict::yes;
  j["S_order"] = r.S_order;
  j["N_order"] = r.N_order;
  Json qg = Json::array();
  for (const auto& g : r.Q_gens) qg.push_back(g.str());
  j["Q_gens"] = qg;
  j["M_order"] = r.M_order;
  j["np"] = r.np;
  if (r.kappa_value) j["kappa"] = *r.kappa_value;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const OracleResult& r) {
  Json j;
  j["p"] = r.p;
  j["q"] = r.q;
  j["n"] = r.n;
  Json kept = Json::array();
  for (const auto& e : r.kept) {
    Json je;
    je["set"] = e.set.str();
    Json vg = Json::array();
    for (const auto& g : e.vertex.generators()) vg.push_back(g.str());
    je["vertex_gens"] = vg;
    je["np"] = e.np_broue;
    je["report"] = to_json(e.report, r.q);
    kept.push_back(je);
  }
  j["kept"] = kept;
  j["total_class_summands"] = r.total_class_summands;
  j["np_sum"] = r.np_sum();
  j["conclusive"] = r.conclusive;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const CandidateEntry& e, int q) {
  Json j;
  j["set"] = e.set.str();
  j["degree"] = e.set.degree();
  j["origin"] = e.origin;
  j["kept"] = e.kept;
  j["report"] = to_json(e.report, q);
  if (e.kappa_info) j["kappa"] = to_json(*e.kappa_info);
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["p"] = r.p;
  j["q"] = r.q;
  j["max_degree"] = r.max_degree;
  auto list = [&](const std::vector<CandidateEntry>& v) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back(to_json(e, r.q));
    return a;
  };
  j["transitive"] = list(r.transitive);
  j["irreducible_exact"] = list(r.irreducible_exact);
  j["projective_free"] = list(r.projective_free);
  j["projective_classes"] = list(r.projective_classes);
  j["all"] = list(r.all);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const VerifyResult& r) {
  Json j;
  j["p"] = r.p;
  j["q"] = r.q;
  j["n"] = r.n;
  j["agree"] = r.agree;
  j["conclusive"] = r.conclusive;
  j["matched"] = r.matched;
  j["missing"] = r.missing;
  j["extra"] = r.extra;
  j["multiplicity_ok"] = r.multiplicity_ok;
  j["total_class_summands"] = r.total_class_summands;
  j["np_sum"] = r.np_sum;
  return j;
}

std::string text_report(const FpsReport& r, int q) {
  std::ostringstream os;
  os << "set: " << r.set.str() << "\n";
  os << "p: " << r.p << "  q: " << q << "\n";
  os << "closed: " << (r.closed ? "true" : "false") << "\n";
  os << "exact: " << (r.exact ? "true" : "false") << "\n";
  os << "projective: " << (r.projective ? "true" : "false") << "\n";
  os << "fixed_point_set: " << to_string(r.fixed_point_set) << "\n";
  os << "S_order: " << r.S_order << "  N_order: " << r.N_order << "  M_order: " << r.M_order
     << "\n";
  os << "Q_gens:";
  for (const auto& g : r.Q_gens) os << ' ' << g.str();
  if (r.Q_gens.empty()) os << " (trivial)";
  os << "\n";
  os << "np: " << r.np << (r.np_exact ? "" : " (incomplete)") << "\n";
  if (r.kappa_value) os << "kappa: " << *r.kappa_value << "\n";
  for (const auto& nline : r.notes) os << "note: " << nline << "\n";
  return os.str();
}

std::string text_report(const OracleResult& r) {
  std::ostringstream os;
  os << "oracle p=" << r.p << " q=" << r.q << " n=" << r.n << "\n";
  for (const auto& e : r.kept) {
    os << "kept: " << e.set.str() << "\n";
    os << "  vertex:";
    for (const auto& g : e.vertex.generators()) os << ' ' << g.str();
    os << "\n  np: " << e.np_broue << "\n";
  }
  os << "classes: " << r.kept.size() << "\n";
  os << "total_class_summands: " << r.total_class_summands << "\n";
  os << "np_sum: " << r.np_sum() << "\n";
  os << "conclusive: " << (r.conclusive ? "true" : "false") << "\n";
  for (const auto& nline : r.notes) os << "note: " << nline << "\n";
  return os.str();
}

std::string text_report(const ClassificationReport& r) {
  std::ostringstream os;
  os << "classification p=" << r.p << " q=" << r.q << " max_degree=" << r.max_degree << "\n";
  os << "degree | flags | kappa | verdict | set\n";
  auto flags = [](const FpsReport& rep) {
    std::string f;
    f += rep.closed ? 'c' : '-';
    f += rep.exact ? 'e' : '-';
    f += rep.projective ? 'p' : '-';
    return f;
  };
  for (const auto& e : r.all) {
    os << e.set.degree() << " | " << flags(e.report) << " | ";
    if (e.kappa_info && e.kappa_info->value)
      os << *e.kappa_info->value;
    else if (e.kappa_info)
      os << ">" << e.kappa_info->tested_up_to;
    else
      os << "-";
    os << " | " << to_string(e.report.fixed_point_set) << " | " << e.set.str() << "\n";
  }
  os << "entries: " << r.all.size() << "\n";
  for (const auto& nline : r.notes) os << "note: " << nline << "\n";
  return os.str();
}

std::string text_report(const VerifyResult& r) {
  std::ostringstream os;
  os << (r.agree ? "AGREE" : "MISMATCH") << " p=" << r.p << " q=" << r.q << " n=" << r.n << "\n";
  os << "matched: " << r.matched.size() << "\n";
  for (const auto& s : r.matched) os << "  = " << s << "\n";
  for (const auto& s : r.missing) os << "  missing from classification: " << s << "\n";
  for (const auto& s : r.extra) os << "  not found by oracle: " << s << "\n";
  os << "multiplicity: total_class_summands=" << r.total_class_summands
     << " np_sum=" << r.np_sum << " " << (r.multiplicity_ok ? "ok" : "FAIL") << "\n";
  if (!r.conclusive) os << "warning: some decompositions were inconclusive\n";
  return os.str();
}

}  // namespace fpsets
