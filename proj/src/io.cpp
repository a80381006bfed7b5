#include "cohom1/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace cohom1 {

Json number_or_string(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

std::string shortest_repr(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Json to_json(const ActionDescriptor& a) {
  Json j;
  j["space"] = std::string(to_string(a.space));
  j["g"] = a.g;
  j["m0"] = a.m0;
  j["m1"] = a.m1;
  j["n"] = a.n;
  j["weyl_order"] = a.weyl_order;
  j["codim0"] = a.codim0;
  j["codim1"] = a.codim1;
  j["odd_j_allowed"] = a.odd_j_allowed;
  j["notes"] = a.notes;
  return j;
}

Json to_json(const BvpSpec& spec) {
  Json j;
  j["G"] = spec.G;
  j["M0"] = spec.M0;
  j["M1"] = spec.M1;
  j["k"] = spec.k;
  j["length"] = spec.length();
  j["target"] = spec.target();
  return j;
}

Json to_json(const HarmonicityVerdict& v) {
  Json j;
  j["action"] = to_json(v.action);
  j["j"] = v.j;
  j["k"] = v.k;
  j["is_linear_solution"] = v.is_linear_solution;
  j["tangential"] = std::string(to_string(v.tangential));
  j["harmonic"] = v.harmonic;
  j["degree"] = v.degree;
  j["reason"] = v.reason;
  return j;
}

Json to_json(const ShootingConfig& c, const BvpSpec& spec) {
  Json j;
  j["eps0"] = c.eps0;
  j["eps1"] = c.eps1;
  j["rel_tol"] = c.rel_tol;
  j["abs_tol"] = c.abs_tol;
  j["match_point"] = c.match_point_for(spec);
  const auto br = c.bracket_for(spec);
  j["bracket"] = Json::array({br[0], br[1]});
  j["sweep_points"] = c.sweep_points;
  j["max_newton"] = c.max_newton;
  j["blowup_cap"] = c.blowup_cap;
  j["dense_points"] = c.dense_points;
  return j;
}

Json to_json(const SolutionProfile& p) {
  Json j;
  j["spec"] = to_json(p.spec);
  j["slope0"] = p.slope0;
  j["slope1"] = p.slope1;
  j["match_gap"] = Json::array({p.match_gap[0], p.match_gap[1]});
  j["residual"] = p.residual;
  j["boundary_err"] = Json::array({p.boundary_err[0], p.boundary_err[1]});
  j["iterations"] = p.iterations;
  j["samples"] = p.samples.size();
  return j;
}

Json to_json(const SweepPoint& p) {
  Json j;
  j["a"] = p.a;
  j["gap"] = number_or_string(p.gap);
  j["sign_change"] = p.sign_change;
  switch (p.status) {
    case SweepStatus::Ok: j["status"] = "ok"; break;
    case SweepStatus::Escaped: j["status"] = "escaped"; break;
    case SweepStatus::Failed: j["status"] = "failed"; break;
  }
  return j;
}

Json to_json(const IdentitySuiteReport& r) {
  Json j;
  j["samples"] = r.samples;
  j["lemma_sin_sq"] = r.lemma_sin_sq;
  j["lemma_sin_2r"] = r.lemma_sin_2r;
  j["cotangent"] = r.cotangent;
  j["half_sum_split"] = r.half_sum_split;
  j["max"] = r.max();
  return j;
}

Json to_json(const ResidualReport& r) {
  Json j;
  j["max_abs"] = r.max_abs;
  j["boundary_err"] = Json::array({r.boundary_err[0], r.boundary_err[1]});
  return j;
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileSample>& samples) {
  out << "t,r,rdot\n";
  char line[128];
  for (const auto& s : samples) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.t, s.r, s.rdot);
    out << line;
  }
}

std::vector<ProfileSample> read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,r,rdot") {
    throw Error(ErrorCode::InvalidArgument, "profile CSV must start with the header t,r,rdot");
  }
  std::vector<ProfileSample> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ProfileSample s;
    double* fields[3] = {&s.t, &s.r, &s.rdot};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 3; ++i) {
      const auto res = std::from_chars(p, end, *fields[i]);
      const bool sep_ok = i < 2 ? (res.ptr < end && *res.ptr == ',') : res.ptr == end;
      if (res.ec != std::errc() || !sep_ok) {
        throw Error(ErrorCode::InvalidArgument, "malformed profile CSV at line " +
                                                    std::to_string(lineno));
      }
      p = res.ptr + 1;
    }
    out.push_back(s);
  }
  return out;
}

std::string format_verdicts_text(const std::vector<HarmonicityVerdict>& verdicts) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "action" << std::right << std::setw(5) << "j"
     << std::setw(6) << "k" << std::setw(10) << "harmonic" << std::setw(8) << "degree"
     << std::setw(8) << "linear" << "  " << std::left << std::setw(12) << "tangential"
     << "reason\n";
  for (const auto& v : verdicts) {
    os << std::left << std::setw(22) << v.action.label() << std::right << std::setw(5) << v.j
       << std::setw(6) << v.k << std::setw(10) << (v.harmonic ? "yes" : "no") << std::setw(8)
       << v.degree << std::setw(8) << (v.is_linear_solution ? "yes" : "no") << "  " << std::left
       << std::setw(12) << to_string(v.tangential) << v.reason << "\n";
  }
  return os.str();
}

}  // namespace cohom1
