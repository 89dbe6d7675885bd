#pragma once

#include <json.hpp>

#include "permcorr/chains.hpp"
#include "permcorr/engine.hpp"
#include "permcorr/measures.hpp"
#include "permcorr/permset.hpp"

namespace permcorr {

using Json = nlohmann::json;

/// Accepts "p/q" strings, integers, and JSON floats (converted exactly from
/// their binary value; prefer strings for exact work).
Rational rational_from_json(const Json& v);
Json rational_to_json(const Rational& q);  // "p/q" string

// Measure specs:
//   {"measure":"uniform"}
//   {"measure":"mallows","q":"1/2"}
//   {"measure":"ig","dists":[["1/2","1/2"], ...]}      (one list per k)
//   {"measure":"boltzmann","x":[...],"V":"abs","q":0.5}
//   {"measure":"fixed_points","q":0.5}
// V may also be {"table":[[threshold,value],...]}.
MeasureQ measure_from_json_exact(int n, const Json& spec);
MeasureD measure_from_json_float(int n, const Json& spec);
std::string measure_desc(const Json& spec);

// Family specs:
//   {"family":"u_ij","i":1,"j":2}
//   {"family":"layers_le","k":3}
//   {"family":"t_band","t":2}
//   {"family":"band_like","preset":"max"|"sum"|"sum_sq","t":4}
//   {"family":"band_like","vectors":[[0,1,...],...]}   (validated explicit D)
//   {"family":"seq_dom","w":[...],"t":[...]}
//   {"family":"seq_dom_prime","w":[...],"t":[...]}
//   {"family":"thm2","alpha":"1/2","beta":"1/2","side":"A"}
//   {"family":"explicit","perms":["3,1,2",[2,1,3],...]}
PermSet family_from_json(int n, const Json& spec);

// PermSet wire forms: {"n":3,"perms":["1,2,3",...]} or {"n":4,"bits_hex":"..."}.
PermSet permset_from_json(const Json& v);
Json permset_to_json(const PermSet& s, std::uint64_t explicit_limit = 64);

// SetFamily wire forms: {"n":4,"sets":[[1],[1,2]]} or {"n":4,"mask_hex":"..."}.
SetFamily set_family_from_json(const Json& v);
Json set_family_to_json(const SetFamily& f);

Json correlation_report_to_json(const CorrelationReport<Rational>& r);
Json correlation_report_to_json(const CorrelationReport<double>& r);
Json scan_report_to_json(const ScanReport<Rational>& r);
Json scan_report_to_json(const ScanReport<double>& r);
Json lattice_report_to_json(const LatticeConditionReport<Rational>& r);
Json joint_tail_report_to_json(const JointTailReport& r);

}  // namespace permcorr
