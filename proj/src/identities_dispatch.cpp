#include <algorithm>
#include <cmath>
#include <map>

#include "besselft/identities.hpp"
#include "identities_common.hpp"

namespace besselft {

namespace {

using detail::require;

const std::optional<cplx> kRequired;

class Bindings {
 public:
  Bindings(const std::string& tag, const ParamList& params) : tag_(tag) {
    for (const auto& [name, value] : params) values_[name] = value;
  }

  cplx complex(const std::string& name) const { return values_.at(name); }

  double real(const std::string& name) const {
    cplx v = values_.at(name);
    require(v.imag() == 0.0, tag_ + ": " + name + " must be real");
    return v.real();
  }

  int sign(const std::string& name) const {
    double v = real(name);
    require(v == 1.0 || v == -1.0, tag_ + ": " + name + " must be +1 or -1");
    return static_cast<int>(v);
  }

 private:
  std::string tag_;
  std::map<std::string, cplx> values_;
};

// Checks the preconditions with check = true, runs the verifier otherwise.
VerificationReport dispatch(const std::string& tag, const ParamList& params, const VerifyConfig& cfg,
                            bool check) {
  const Bindings b(tag, complete_params(tag, params));
  auto run = [&](auto checker, auto verifier, auto... args) {
    checker(args...);
    return check ? VerificationReport{} : verifier(args..., cfg);
  };
  if (tag == "weber")
    return run(detail::check_weber_real, verify_weber_real, b.complex("nu"), b.real("y"), b.sign("sign"));
  if (tag == "hardy")
    return run(detail::check_hardy_real, verify_hardy_real, b.complex("nu"), b.real("y"), b.sign("sign"));
  if (tag == "weber2")
    return run(detail::check_weber_second, verify_weber_second, b.complex("nu"), b.complex("a"), b.complex("p"));
  if (tag == "lemma1")
    return run(detail::check_first_lemma, verify_first_lemma, b.complex("nu"), b.complex("a"), b.real("c"),
               b.sign("sign"));
  if (tag == "emot") return run(detail::check_emot, verify_emot, b.complex("nu"), b.real("a"), b.complex("b"));
  if (tag == "lemma2")
    return run(detail::check_second_lemma, verify_second_lemma, b.complex("nu"), b.real("a"), b.real("c"));
  if (tag == "main")
    return run(detail::check_main_theorem, verify_main_theorem, b.complex("mu"), b.real("y"), b.real("theta"));
  if (tag == "pipeline")
    return run(detail::check_proof_pipeline, verify_proof_pipeline, b.complex("mu"), b.real("y"), b.real("theta"),
               b.sign("sign"));
  return run(detail::check_reformulation_consistency, verify_reformulation_consistency, b.complex("mu"),
             b.real("y"), b.real("theta"));
}

}  // namespace

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> catalog{
      {"weber", {{"nu", kRequired}, {"y", cplx(1.0)}, {"sign", cplx(1.0)}}},
      {"hardy", {{"nu", kRequired}, {"y", cplx(1.0)}, {"sign", cplx(1.0)}}},
      {"weber2", {{"nu", kRequired}, {"a", kRequired}, {"p", cplx(1.0)}}},
      {"lemma1", {{"nu", kRequired}, {"a", kRequired}, {"c", kRequired}, {"sign", cplx(1.0)}}},
      {"emot", {{"nu", kRequired}, {"a", kRequired}, {"b", kRequired}}},
      {"lemma2", {{"nu", kRequired}, {"a", kRequired}, {"c", kRequired}}},
      {"main", {{"mu", kRequired}, {"y", cplx(1.0)}, {"theta", cplx(0.0)}}},
      {"pipeline", {{"mu", kRequired}, {"y", cplx(1.0)}, {"theta", cplx(0.0)}, {"sign", cplx(1.0)}}},
      {"consistency", {{"mu", kRequired}, {"y", cplx(1.0)}, {"theta", cplx(0.0)}}},
  };
  return catalog;
}

const IdentityInfo& identity_info(const std::string& tag) {
  for (const auto& info : identity_catalog())
    if (info.tag == tag) return info;
  throw DomainError("unknown identity: " + tag);
}

ParamList complete_params(const std::string& tag, const ParamList& given) {
  const IdentityInfo& info = identity_info(tag);
  for (const auto& [name, value] : given) {
    bool known = std::any_of(info.params.begin(), info.params.end(), [&](const auto& p) { return p.first == name; });
    if (!known) throw DomainError(tag + ": unknown parameter " + name);
  }
  ParamList out;
  for (const auto& [name, fallback] : info.params) {
    auto it = std::find_if(given.rbegin(), given.rend(), [&](const auto& p) { return p.first == name; });
    if (it != given.rend()) {
      out.emplace_back(name, it->second);
    } else if (fallback) {
      out.emplace_back(name, *fallback);
    } else {
      throw DomainError(tag + ": missing parameter " + name);
    }
  }
  return out;
}

void validate_params(const std::string& tag, const ParamList& params) { dispatch(tag, params, {}, true); }

VerificationReport verify(const std::string& tag, const ParamList& params, const VerifyConfig& cfg) {
  return dispatch(tag, params, cfg, false);
}

std::vector<ParamList> expand_grid(const ParamGrid& grid) {
  std::vector<ParamList> points;
  if (grid.axes.empty()) return points;
  for (const auto& axis : grid.axes)
    if (axis.second.empty()) return points;
  std::vector<size_t> index(grid.axes.size(), 0);
  while (true) {
    ParamList point;
    for (size_t k = 0; k < grid.axes.size(); ++k) point.emplace_back(grid.axes[k].first, grid.axes[k].second[index[k]]);
    points.push_back(std::move(point));
    size_t k = grid.axes.size();
    while (k > 0 && ++index[k - 1] == grid.axes[k - 1].second.size()) index[--k] = 0;
    if (k == 0) break;
  }
  return points;
}

SweepSummary sweep(const ParamGrid& grid, const std::string& tag) {
  const std::vector<ParamList> points = expand_grid(grid);
  identity_info(tag);
  for (const auto& point : points) validate_params(tag, point);
  SweepSummary summary;
  for (const auto& point : points) {
    VerificationReport r = verify(tag, point, grid.config);
    if (r.pass) ++summary.pass_count;
    if (!std::isnan(r.rel_err)) summary.max_rel_err = std::max(summary.max_rel_err, r.rel_err);
    summary.reports.push_back(std::move(r));
  }
  return summary;
}

}  // namespace besselft
