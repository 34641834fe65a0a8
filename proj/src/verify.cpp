#include "sdof/verify.hpp"

#include <algorithm>
#include <sstream>

#include "sdof/dof_calculus.hpp"

namespace sdof {

namespace {

class Check {
 public:
  Check(std::string name, std::size_t limit) : limit_(limit) { report_.name = std::move(name); }

  template <typename Describe>
  void expect(bool ok, Describe&& describe) {
    ++report_.evaluated;
    if (ok) return;
    ++report_.mismatches;
    if (report_.counterexamples.size() < limit_) report_.counterexamples.push_back(describe());
  }

  CheckReport take() { return std::move(report_); }

 private:
  CheckReport report_;
  std::size_t limit_;
};

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::string set_text(const std::vector<int>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed(); });
}

const CheckReport* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerifyReport verify_grid(const VerifyOptions& options) {
  const VerifyBounds& b = options.bounds;
  const std::size_t limit = options.max_counterexamples;
  Check bob_split_optimum("bob_split_optimum", limit), worst_case_closed_form("worst_case_closed_form", limit), eve_extreme_split("eve_extreme_split", limit),
      positive_when_bob_outnumbers_eve("positive_when_bob_outnumbers_eve", limit), helper_allocation("helper_allocation", limit), budget("budget", limit),
      range("range", limit);

  for (int n_a = 1; n_a <= b.max_n_a; ++n_a) {
    for (int n_b = 1; n_b <= b.max_n_b; ++n_b) {
      for (int n_e_t = 0; n_e_t <= b.max_n_e; ++n_e_t) {
        for (int n_e_r = 0; n_e_r <= b.max_n_e; ++n_e_r) {
          DofResult closed = sdof_active_max(n_a, n_b, n_e_t, n_e_r);
          if (options.corrupt_closed_form && closed.optimizer_set.size() == 1) {
            closed.optimizer = (closed.optimizer + 1) % (n_b + 1);
          }
          const DofResult oracle = oracle_max_over_split(n_a, n_b, n_e_t, n_e_r);
          bob_split_optimum.expect(closed.dof == oracle.dof && contains(oracle.optimizer_set, closed.optimizer), [&] {
            std::ostringstream os;
            os << "n_a=" << n_a << " n_b=" << n_b << " n_e_t=" << n_e_t << " n_e_r=" << n_e_r
               << ": closed dof=" << closed.dof << " nbt=" << closed.optimizer
               << ", exhaustive dof=" << oracle.dof << " argmax=" << set_text(oracle.optimizer_set);
            return os.str();
          });
          range.expect(closed.dof >= 0 && closed.dof <= std::min(n_a, n_b), [&] {
            std::ostringstream os;
            os << "sdof_active_max(" << n_a << "," << n_b << "," << n_e_t << "," << n_e_r << ")=" << closed.dof;
            return os.str();
          });
        }
      }

      for (int n_e = 0; n_e <= b.max_n_e; ++n_e) {
        const int closed = worst_case_sdof(n_a, n_b, n_e).dof;
        const DofResult oracle = oracle_worst_case(n_a, n_b, n_e);
        auto where = [&] {
          std::ostringstream os;
          os << "n_a=" << n_a << " n_b=" << n_b << " n_e=" << n_e << ": closed=" << closed
             << " exhaustive=" << oracle.dof << " argmin=" << set_text(oracle.optimizer_set);
          return os.str();
        };
        worst_case_closed_form.expect(closed == oracle.dof, where);
        eve_extreme_split.expect(contains(oracle.optimizer_set, 0) || contains(oracle.optimizer_set, n_e), where);
        if (n_b > n_e) positive_when_bob_outnumbers_eve.expect(closed >= 1, where);
        range.expect(closed >= 0 && closed <= std::min(n_a, n_b), where);
      }
    }
  }

  for (int n_sum = 0; n_sum <= b.max_n_sum; ++n_sum) {
    for (int n_s = 0; n_s <= b.max_n_e; ++n_s) {
      for (int n_ep = 0; n_ep <= b.max_n_e; ++n_ep) {
        int best = 0;
        for (int n_h = 0; n_h <= n_sum; ++n_h) {
          const HelperConfig cfg{n_s, n_h, n_sum - n_h, n_ep};
          best = std::max(best, helper_g(cfg));
          const int greedy = greedy_stream_count(candidate_counts(cfg), cfg.n_d, cfg.n_s);
          budget.expect(greedy == helper_g(cfg), [&] {
            std::ostringstream os;
            os << "n_s=" << n_s << " n_h=" << n_h << " n_d=" << n_sum - n_h << " n_ep=" << n_ep
               << ": greedy=" << greedy << " g=" << helper_g(cfg);
            return os.str();
          });
        }
        const int closed = helper_sdof_max(n_sum, n_s, n_ep);
        const int n_h = helper_optimal_nh(n_sum, n_s, n_ep);
        const int at_nh = helper_g({n_s, n_h, n_sum - n_h, n_ep});
        helper_allocation.expect(closed == best && at_nh == best && n_h >= 0 && n_h <= n_sum, [&] {
          std::ostringstream os;
          os << "n_sum=" << n_sum << " n_s=" << n_s << " n_ep=" << n_ep << ": closed=" << closed
             << " n_h_hat=" << n_h << " g(n_h_hat)=" << at_nh << " exhaustive=" << best;
          return os.str();
        });
      }
    }
  }

  VerifyReport report;
  for (Check* c : {&bob_split_optimum, &worst_case_closed_form, &eve_extreme_split, &positive_when_bob_outnumbers_eve, &helper_allocation, &budget, &range}) {
    report.checks.push_back(c->take());
  }
  return report;
}

}  // namespace sdof
