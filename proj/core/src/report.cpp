#include "unitj/report.hpp"

namespace unitj {

Json json_real(const Real& x, size_t digits) { return dec_string(x, digits); }

Json json_logvalue(const LogValue& v, size_t digits) {
  Json j;
  j["level"] = v.level();
  j["sign"] = v.sign();
  j["magnitude"] = dec_string(v.magnitude(), digits);
  return j;
}

Json json_matrix(const UnimodularMatrix& g) {
  Json j;
  j["a"] = g.a().get_str();
  j["b"] = g.b().get_str();
  j["c"] = g.c().get_str();
  j["d"] = g.d().get_str();
  return j;
}

Json json_point(const HPoint& p, size_t digits) {
  Json j;
  j["re"] = dec_string(p.re(), digits);
  j["im"] = dec_string(p.im(), digits);
  if (p.shadow()) {
    j["exact_re"] = p.shadow()->x.get_str();
    j["exact_im_sq"] = p.shadow()->y2.get_str();
  }
  return j;
}

Json json_cluster_report(const ClusterReport& rep, size_t digits) {
  Json j;
  j["N"] = rep.N;
  j["eps"] = rep.eps.get_str();
  j["cyclic_only"] = rep.cyclic_only;
  j["member_count"] = rep.members.size();
  Json members = Json::array();
  for (const ClusterMember& m : rep.members) {
    Json e;
    e["m"] = m.M.m;
    e["l"] = m.M.l;
    e["n"] = m.M.n;
    e["cyclic"] = m.M.cyclic;
    e["reduced"] = json_point(m.reduced, digits);
    e["distance"] = dec_string(m.distance, digits);
    members.push_back(e);
  }
  j["members"] = members;
  j["bound_lemma"] = dec_string(rep.bound_lemma, digits);
  j["bound_prop"] = dec_string(rep.bound_prop, digits);
  j["eps_in_lemma_range"] = rep.eps_in_lemma_range;
  j["tau0_in_domain"] = rep.tau0_in_domain;
  j["members_within_lemma"] = rep.members_within_lemma;
  j["members_within_prop"] = rep.members_within_prop;
  return j;
}

Json json_final_bound(const FinalBound& fb, size_t digits) {
  Json j;
  j["available"] = fb.available;
  if (!fb.available) {
    j["reason"] = fb.unavailable_reason;
    return j;
  }
  Json constants;
  constants["C"] = json_logvalue(fb.C, digits);
  constants["c1"] = json_logvalue(fb.c1, digits);
  constants["c1_prime"] = json_logvalue(fb.c1_prime, digits);
  constants["c1_conjbound_variant"] = json_logvalue(fb.c1_variant, digits);
  constants["c2"] = dec_string(fb.c2, digits);
  constants["c3"] = dec_string(fb.c3, digits);
  constants["threshold_N"] = json_logvalue(fb.threshold, digits);
  j["constants"] = constants;
  Json terms = Json::array();
  for (const BoundTerm& t : fb.terms) {
    Json e;
    e["name"] = t.name;
    e["value"] = json_logvalue(t.value, digits);
    terms.push_back(e);
  }
  j["terms"] = terms;
  j["dominating_term"] = fb.dominating;
  j["bound"] = json_logvalue(fb.bound, digits);
  return j;
}

Json make_document(const std::string& command, mpfr_prec_t precision_bits) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["precision_bits"] = static_cast<long>(precision_bits);
  return j;
}

}  // namespace unitj
