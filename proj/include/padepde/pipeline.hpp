// Copyright 2026 The padepde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PADEPDE_PIPELINE_HPP_
#define PADEPDE_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "padepde/problem.hpp"
#include "padepde/residual.hpp"

namespace padepde {

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::string command;  // expand | pade | conditions | verify
  std::optional<int> order;
  std::optional<int> L;
  std::optional<int> M;
  std::optional<std::vector<std::string>> rules;
};

struct RunReport {
  Json json;
  std::string text;
  int exit_code = 0;
};

inline std::string index_bracket(const MultiIndex& j) {
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(j[i]);
  }
  return s + "]";
}

// The intermediate results a single pipeline run produces; reused by the
// corpus runner for golden rendering.
struct PipelineResult {
  int order = 0;
  int L = 0;
  int M = 0;
  std::vector<std::string> extra_rule_names;
  PowerSeries series;
  std::optional<PadeApproximant> pade;
  std::optional<RationalAnsatz> ansatz;
  std::optional<ConditionSet> conds;
  std::optional<ExactnessVerdict> verdict;
};

inline PipelineResult run_stages(const Problem& pb, const RunOptions& opt) {
  PipelineResult out;
  out.L = opt.L.value_or(pb.L);
  out.M = opt.M.value_or(pb.M);
  bool needs_pade = opt.command != "expand";
  int needed = needs_pade ? out.L + out.M : 0;
  out.order = std::max(opt.order.value_or(pb.order), needed);
  out.extra_rule_names = opt.rules.value_or(pb.verify_names);

  EulerEquation eq = pb.reduced_equation();
  const RewriteSystem& ext = pb.extensions;

  out.series =
      solve_series(eq, SeedRoot{pb.seed_use}, pb.frees, out.order, ext);
  if (!needs_pade) return out;

  GradedSeries g = grade(out.series, out.L + out.M, pb.rho);
  out.pade = pade_solve(g, out.L, out.M, ext);
  out.ansatz = collapse(*out.pade, ext, *pb.symbols);
  if (opt.command == "pade") return out;

  RewriteSystem extra = pb.rules_from(out.extra_rule_names);
  if (opt.command == "conditions") {
    out.conds = conditions(*out.ansatz, eq, ext.merged(extra), *pb.symbols,
                           pb.rho);
    return out;
  }
  if (opt.command == "verify") {
    out.verdict = verify(*out.ansatz, eq, ext, extra, *pb.symbols, pb.rho);
    out.conds = out.verdict->residual_conditions;
    return out;
  }
  throw UsageError("unknown command '" + opt.command + "'");
}

// Body of the report (everything below the problem/command header); also
// the canonical golden-file rendering for corpus scenarios.
inline void render_body(const SymbolTable& tab, const PipelineResult& r,
                        std::string& text, Json& j) {
  {
    Json js;
    js["order"] = r.order;
    Json coeffs = Json::array();
    text += "series order " + std::to_string(r.order) + "\n";
    for (const auto& [idx, c] : r.series.coeff) {
      if (c.is_zero() && !mi_is_zero(idx)) continue;
      std::string cs = c.to_string(tab);
      text += "c" + index_bracket(idx) + " = " + cs + "\n";
      Json e;
      e["index"] = idx;
      e["value"] = cs;
      coeffs.push_back(e);
    }
    js["coefficients"] = coeffs;
    j["series"] = js;
  }

  if (r.pade) {
    Json jp;
    jp["L"] = r.L;
    jp["M"] = r.M;
    text += "pade L " + std::to_string(r.L) + " M " + std::to_string(r.M) +
            "\n";
    Json parr = Json::array(), qarr = Json::array();
    for (int i = 0; i <= r.L; ++i) {
      std::string s = r.pade->p[i].to_string(tab);
      text += "p[" + std::to_string(i) + "] = " + s + "\n";
      parr.push_back(s);
    }
    for (int i = 0; i <= r.M; ++i) {
      std::string s = r.pade->q[i].to_string(tab);
      text += "q[" + std::to_string(i) + "] = " + s + "\n";
      qarr.push_back(s);
    }
    jp["p"] = parr;
    jp["q"] = qarr;
    if (r.ansatz) {
      Json ja;
      ja["num"] = r.ansatz->num.to_string(tab);
      ja["den"] = r.ansatz->den.to_string(tab);
      text += "ansatz num = " + r.ansatz->num.to_string(tab) + "\n";
      text += "ansatz den = " + r.ansatz->den.to_string(tab) + "\n";
      jp["ansatz"] = ja;
    }
    j["pade"] = jp;
  }

  if (r.conds) {
    Json jc;
    jc["max_degree"] = r.conds->max_degree;
    if (!r.extra_rule_names.empty()) jc["rules"] = r.extra_rule_names;
    Json entries = Json::array();
    text += "conditions " + std::to_string(r.conds->conditions.size()) +
            " (Lambda = " + std::to_string(r.conds->max_degree) + ")";
    if (!r.extra_rule_names.empty()) {
      text += " [rules:";
      for (const auto& n : r.extra_rule_names) text += " " + n;
      text += "]";
    }
    text += "\n";
    for (auto it = r.conds->conditions.rbegin();
         it != r.conds->conditions.rend(); ++it) {
      std::string s = it->second.to_string(tab);
      text += "E" + index_bracket(it->first) + " = " + s + "\n";
      Json e;
      e["index"] = it->first;
      e["value"] = s;
      entries.push_back(e);
    }
    jc["entries"] = entries;
    jc["denominator"] = r.conds->denominator.to_string(tab);
    text += "D = " + r.conds->denominator.to_string(tab) + "\n";
    j["conditions"] = jc;
  }

  if (r.verdict) {
    Json jv;
    jv["exact"] = r.verdict->exact;
    jv["denominator_ok"] = r.verdict->denominator_ok;
    jv["conditions_remaining"] =
        r.verdict->residual_conditions.conditions.size();
    j["verdict"] = jv;
    text += std::string("verdict: ") +
            (r.verdict->exact ? "exact" : "not exact") + "\n";
  }
}

inline RunReport render_report(const Problem& pb, const RunOptions& opt,
                               const PipelineResult& r) {
  RunReport rep;
  rep.json["problem"] = pb.name;
  rep.json["command"] = opt.command;
  rep.text += "problem: " + pb.name + "\n";
  rep.text += "command: " + opt.command + "\n";
  render_body(*pb.symbols, r, rep.text, rep.json);
  return rep;
}

// expand | pade | conditions | verify over a loaded problem. Exit code 0 on
// success; mathematical failures map to 2 and malformed input to 1 at the
// CLI boundary.
inline RunReport run_pipeline(const Problem& pb, const RunOptions& opt) {
  PipelineResult r = run_stages(pb, opt);
  return render_report(pb, opt, r);
}

}  // namespace padepde

#endif  // PADEPDE_PIPELINE_HPP_
