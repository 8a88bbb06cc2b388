#include "imprec/eval.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace imprec {

EvalRow aggregate(const std::vector<ProblemOutcome>& outcomes) {
  EvalRow row;
  row.n_problems = static_cast<int>(outcomes.size());
  if (outcomes.empty()) return row;
  double tp = 0, fp = 0, fn = 0, hits = 0, spread = 0, d = 0, p = 0, o = 0,
         secs = 0;
  for (const auto& out : outcomes) {
    double t = out.hit ? 1 : 0;
    tp += t;
    fp += out.returned - t;
    fn += 1 - t;
    hits += t;
    spread += out.returned;
    d += out.d;
    p += out.p;
    o += out.o;
    secs += out.seconds;
  }
  double n = static_cast<double>(outcomes.size());
  row.accuracy = hits / n;
  row.spread = spread / n;
  row.precision = tp + fp > 0 ? tp / (tp + fp) : 0;
  row.recall = tp + fn > 0 ? tp / (tp + fn) : 0;
  row.f1 = row.precision + row.recall > 0
               ? 2 * row.precision * row.recall / (row.precision + row.recall)
               : 0;
  row.mean_d = d / n;
  row.mean_p = p / n;
  row.mean_o = o / n;
  row.wallclock_per_problem = secs / n;
  return row;
}

std::vector<EvalRow> evaluate(const std::vector<EvalProblem>& problems,
                              const std::vector<NamedConfig>& configs,
                              double timeout_secs, int jobs) {
  struct Cell {
    std::vector<ProblemOutcome> outcomes;
    int timed_out = 0, failed = 0;
  };
  using Key = std::tuple<std::string, std::string, int, int>;
  std::map<Key, Cell> cells;
  std::mutex mu;

  struct Job {
    const EvalProblem* prob;
    const NamedConfig* cfg;
  };
  std::vector<Job> queue;
  for (const auto& c : configs)
    for (const auto& p : problems) queue.push_back({&p, &c});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= queue.size()) break;
      const auto& [prob, nc] = queue[i];
      Key key{prob->domain_name, nc->name, prob->incompleteness,
              prob->observability};
      HeuristicConfig cfg = nc->cfg;
      auto t0 = std::chrono::steady_clock::now();
      if (timeout_secs > 0)
        cfg.deadline = t0 + std::chrono::microseconds(static_cast<long long>(
                                timeout_secs * 1e6));
      try {
        RecognitionResult r = recognize_grounded(prob->gp, cfg);
        ProblemOutcome out;
        out.hit = r.hit;
        out.returned = r.spread;
        out.n_hyps = static_cast<int>(prob->gp.hyp_goals.size());
        for (const auto& c : r.counts) {
          out.d += c[0];
          out.p += c[1];
          out.o += c[2];
        }
        if (!r.counts.empty()) {
          out.d /= static_cast<double>(r.counts.size());
          out.p /= static_cast<double>(r.counts.size());
          out.o /= static_cast<double>(r.counts.size());
        }
        out.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        std::lock_guard<std::mutex> lk(mu);
        cells[key].outcomes.push_back(std::move(out));
      } catch (const TimeoutError&) {
        std::lock_guard<std::mutex> lk(mu);
        cells[key].timed_out++;
      } catch (const std::exception&) {
        std::lock_guard<std::mutex> lk(mu);
        cells[key].failed++;
      }
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<EvalRow> rows;
  for (auto& [key, cell] : cells) {
    EvalRow row = aggregate(cell.outcomes);
    row.domain_name = std::get<0>(key);
    row.config = std::get<1>(key);
    row.incompleteness = std::get<2>(key);
    row.observability = std::get<3>(key);
    row.timed_out = cell.timed_out;
    row.failed = cell.failed;
    rows.push_back(std::move(row));
  }
  return rows;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw LengthMismatch("pearson inputs differ in length");
  std::size_t n = xs.size();
  if (n < 2) throw LengthMismatch("pearson needs at least two samples");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;  // zero variance: defined as 0
  return sxy / std::sqrt(sxx * syy);
}

std::vector<RocPoint> roc_points(const std::vector<ProblemOutcome>& outcomes) {
  std::vector<RocPoint> out;
  for (const auto& oc : outcomes) {
    RocPoint pt;
    pt.label = oc.label;
    pt.tpr = oc.hit ? 1 : 0;
    int wrong_returned = oc.returned - (oc.hit ? 1 : 0);
    pt.fpr = oc.n_hyps > 1 ? static_cast<double>(wrong_returned) /
                                 static_cast<double>(oc.n_hyps - 1)
                           : 0;
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace imprec
