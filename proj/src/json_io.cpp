#include "permcorr/json_io.hpp"

#include <stdexcept>

namespace permcorr {

Rational rational_from_json(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  throw std::invalid_argument("expected a rational (string \"p/q\" or number)");
}

Json rational_to_json(const Rational& q) { return format_rational(q); }

namespace {

double double_from_json(const Json& v) {
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  if (v.is_number()) return v.get<double>();
  throw std::invalid_argument("expected a number");
}

template <class S>
S scalar_from_json(const Json& v) {
  if constexpr (ScalarOps<S>::exact) return rational_from_json(v);
  else return double_from_json(v);
}

template <class S>
Potential<S> potential_from_json(const Json& v) {
  if (v.is_string()) return Potential<S>::named(v.get<std::string>());
  if (v.is_object() && v.contains("table")) {
    std::vector<std::pair<S, S>> steps;
    for (const Json& row : v.at("table")) {
      if (!row.is_array() || row.size() != 2) throw std::invalid_argument("potential table rows are [threshold, value]");
      steps.emplace_back(scalar_from_json<S>(row[0]), scalar_from_json<S>(row[1]));
    }
    return Potential<S>::table(std::move(steps));
  }
  throw std::invalid_argument("potential must be a name or {\"table\": ...}");
}

template <class S>
Measure<S> measure_from_json(int n, const Json& spec) {
  if (!spec.is_object() || !spec.contains("measure"))
    throw std::invalid_argument("measure spec needs a \"measure\" field");
  std::string kind = spec.at("measure").get<std::string>();
  if (kind == "uniform") return uniform_measure<S>(n);
  if (kind == "mallows") return mallows_measure<S>(n, scalar_from_json<S>(spec.at("q")));
  if (kind == "ig") {
    const Json& lists = spec.at("dists");
    if (!lists.is_array() || static_cast<int>(lists.size()) != n)
      throw std::invalid_argument("ig measure needs one distribution per coordinate 1..n");
    std::vector<CoordinateDistribution<S>> dists;
    for (int k = 1; k <= n; ++k) {
      CoordinateDistribution<S> d;
      d.k = k;
      for (const Json& p : lists[static_cast<std::size_t>(k - 1)]) d.probs.push_back(scalar_from_json<S>(p));
      dists.push_back(std::move(d));
    }
    return ig_measure<S>(std::move(dists));
  }
  if (kind == "boltzmann") {
    std::vector<S> x;
    for (const Json& xi : spec.at("x")) x.push_back(scalar_from_json<S>(xi));
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("boltzmann: x must have length n");
    return boltzmann_measure<S>(x, potential_from_json<S>(spec.at("V")), scalar_from_json<S>(spec.at("q")));
  }
  if (kind == "fixed_points") return fixed_point_measure<S>(n, scalar_from_json<S>(spec.at("q")));
  throw std::invalid_argument("unknown measure '" + kind + "'");
}

}  // namespace

MeasureQ measure_from_json_exact(int n, const Json& spec) { return measure_from_json<Rational>(n, spec); }
MeasureD measure_from_json_float(int n, const Json& spec) { return measure_from_json<double>(n, spec); }

std::string measure_desc(const Json& spec) { return spec.dump(); }

namespace {

std::vector<Rational> rational_list(const Json& v) {
  std::vector<Rational> out;
  for (const Json& x : v) out.push_back(rational_from_json(x));
  return out;
}

Permutation perm_from_json(const Json& v) {
  if (v.is_string()) return Permutation::from_string(v.get<std::string>());
  if (v.is_array()) {
    std::vector<int> values;
    for (const Json& x : v) values.push_back(x.get<int>());
    return Permutation(std::move(values));
  }
  throw std::invalid_argument("permutation must be \"3,1,2\" or [3,1,2]");
}

}  // namespace

PermSet family_from_json(int n, const Json& spec) {
  if (!spec.is_object() || !spec.contains("family"))
    throw std::invalid_argument("family spec needs a \"family\" field");
  std::string kind = spec.at("family").get<std::string>();
  if (kind == "u_ij") return u_ij(n, spec.at("i").get<int>(), spec.at("j").get<int>());
  if (kind == "layers_le") return layers_le(n, spec.at("k").get<int>());
  if (kind == "layer") return layer(n, spec.at("k").get<int>());
  if (kind == "t_band") return t_band(n, spec.at("t").get<int>());
  if (kind == "band_like") {
    if (spec.contains("preset")) {
      std::string preset = spec.at("preset").get<std::string>();
      long long t = spec.at("t").get<long long>();
      if (preset == "max") return band_like_preset(n, BandPreset::max_le, t);
      if (preset == "sum") return band_like_preset(n, BandPreset::sum_le, t);
      if (preset == "sum_sq") return band_like_preset(n, BandPreset::sum_sq_le, t);
      throw std::invalid_argument("unknown band_like preset '" + preset + "'");
    }
    DisplacementVectors d;
    for (const Json& row : spec.at("vectors")) {
      std::vector<int> vec;
      for (const Json& e : row) vec.push_back(e.get<int>());
      d.insert(std::move(vec));
    }
    if (!validate_band_like(n, d))
      throw std::invalid_argument("band_like: vectors fail the closure conditions");
    return band_like(n, d);
  }
  if (kind == "seq_dom") return seq_dominating(n, rational_list(spec.at("w")), rational_list(spec.at("t")));
  if (kind == "seq_dom_prime")
    return seq_dominating_prime(n, rational_list(spec.at("w")), rational_list(spec.at("t")));
  if (kind == "thm2") {
    Rational alpha = rational_from_json(spec.at("alpha"));
    Rational beta = rational_from_json(spec.at("beta"));
    std::string side = spec.at("side").get<std::string>();
    AntiPair pair = anti_correlated_pair(n, alpha, beta);
    if (side == "A" || side == "a") return pair.a;
    if (side == "B" || side == "b") return pair.b;
    throw std::invalid_argument("thm2 side must be \"A\" or \"B\"");
  }
  if (kind == "explicit") {
    PermSet s(n);
    for (const Json& p : spec.at("perms")) {
      Permutation perm = perm_from_json(p);
      if (perm.n() != n) throw std::invalid_argument("explicit family: permutation of wrong n");
      s.insert(perm);
    }
    return s;
  }
  throw std::invalid_argument("unknown family '" + kind + "'");
}

PermSet permset_from_json(const Json& v) {
  int n = v.at("n").get<int>();
  if (v.contains("bits_hex")) return PermSet::from_hex(n, v.at("bits_hex").get<std::string>());
  PermSet s(n);
  for (const Json& p : v.at("perms")) {
    Permutation perm = perm_from_json(p);
    if (perm.n() != n) throw std::invalid_argument("permset: permutation of wrong n");
    s.insert(perm);
  }
  return s;
}

Json permset_to_json(const PermSet& s, std::uint64_t explicit_limit) {
  Json out;
  out["n"] = s.n();
  out["size"] = s.size();
  if (s.size() <= explicit_limit) {
    Json perms = Json::array();
    s.for_each([&](Rank r) { perms.push_back(unrank(r, s.n()).to_string()); });
    out["perms"] = std::move(perms);
  } else {
    out["bits_hex"] = s.to_hex();
  }
  return out;
}

SetFamily set_family_from_json(const Json& v) {
  int n = v.at("n").get<int>();
  SetFamily f(n);
  if (v.contains("mask_hex")) {
    const std::string& hex = v.at("mask_hex").get<std::string>();
    std::uint64_t bits = std::uint64_t{1} << n;
    if (hex.size() != (bits + 3) / 4) throw std::invalid_argument("set family hex: wrong length");
    for (std::size_t i = 0; i < hex.size(); ++i) {
      char c = hex[i];
      unsigned val;
      if (c >= '0' && c <= '9') val = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f') val = static_cast<unsigned>(c - 'a' + 10);
      else throw std::invalid_argument("set family hex: bad digit");
      for (int b = 0; b < 4; ++b) {
        std::uint64_t m = i * 4 + static_cast<std::uint64_t>(b);
        if (m < bits && (val >> b & 1)) f.insert(static_cast<SubsetMask>(m));
      }
    }
    return f;
  }
  for (const Json& set : v.at("sets")) {
    SubsetMask m = 0;
    for (const Json& e : set) {
      int x = e.get<int>();
      if (x < 1 || x > n) throw std::invalid_argument("set family: element out of [1,n]");
      m |= SubsetMask{1} << (x - 1);
    }
    f.insert(m);
  }
  return f;
}

Json set_family_to_json(const SetFamily& f) {
  Json sets = Json::array();
  f.for_each([&](SubsetMask m) {
    Json set = Json::array();
    for (int v = 1; v <= f.n(); ++v)
      if (m & (SubsetMask{1} << (v - 1))) set.push_back(v);
    sets.push_back(std::move(set));
  });
  return Json{{"n", f.n()}, {"sets", std::move(sets)}};
}

namespace {

template <class S>
Json correlation_to_json_impl(const CorrelationReport<S>& r) {
  Json out;
  out["n"] = r.n;
  out["mode"] = r.mode == ReportMode::exact ? "exact" : "monte_carlo";
  if constexpr (ScalarOps<S>::exact) {
    out["p_ab"] = rational_to_json(r.p_ab);
    out["p_a"] = rational_to_json(r.p_a);
    out["p_b"] = rational_to_json(r.p_b);
    out["slack"] = rational_to_json(r.slack);
    if (r.ratio_defined) out["ratio"] = rational_to_json(r.ratio);
  }
  out["p_ab_float"] = ScalarOps<S>::to_double(r.p_ab);
  out["p_a_float"] = ScalarOps<S>::to_double(r.p_a);
  out["p_b_float"] = ScalarOps<S>::to_double(r.p_b);
  out["slack_float"] = ScalarOps<S>::to_double(r.slack);
  if (r.ratio_defined) out["ratio_float"] = ScalarOps<S>::to_double(r.ratio);
  else out["ratio"] = nullptr;
  if (r.mode == ReportMode::monte_carlo) {
    out["samples"] = r.samples;
    out["p_ab_ci95"] = Json::array({r.ci_low, r.ci_high});
  }
  return out;
}

template <class S>
Json scan_to_json_impl(const ScanReport<S>& r) {
  Json out;
  out["n"] = r.n;
  out["order"] = r.kind.name();
  if (!r.measure_desc.empty()) out["measure"] = r.measure_desc;
  out["pairs_tested"] = r.pairs_tested;
  if constexpr (ScalarOps<S>::exact) out["min_slack"] = rational_to_json(r.min_slack);
  out["min_slack_float"] = ScalarOps<S>::to_double(r.min_slack);
  out["argmin_a_hex"] = r.argmin_a_hex;
  out["argmin_b_hex"] = r.argmin_b_hex;
  out["truncated"] = r.truncated;
  if (r.randomized) out["seed"] = r.seed;
  return out;
}

}  // namespace

Json correlation_report_to_json(const CorrelationReport<Rational>& r) { return correlation_to_json_impl(r); }
Json correlation_report_to_json(const CorrelationReport<double>& r) { return correlation_to_json_impl(r); }
Json scan_report_to_json(const ScanReport<Rational>& r) { return scan_to_json_impl(r); }
Json scan_report_to_json(const ScanReport<double>& r) { return scan_to_json_impl(r); }

Json lattice_report_to_json(const LatticeConditionReport<Rational>& r) {
  Json out;
  out["holds"] = r.holds;
  out["symbolic"] = r.symbolic;
  out["pairs_checked"] = r.pairs_checked;
  out["worst_slack"] = rational_to_json(r.worst_slack);
  out["worst_slack_float"] = to_double(r.worst_slack);
  out["worst_pair"] = Json::array({r.worst_a, r.worst_b});
  return out;
}

Json joint_tail_report_to_json(const JointTailReport& r) {
  Json out;
  out["p_joint"] = rational_to_json(r.p_joint);
  out["p_a"] = rational_to_json(r.p_a);
  out["p_b"] = rational_to_json(r.p_b);
  out["slack"] = rational_to_json(r.slack);
  out["holds"] = r.holds;
  out["inputs_compressed"] = r.inputs_compressed;
  return out;
}

}  // namespace permcorr
