#include "volcusum/report.hpp"

#include <charconv>
#include <ostream>

#include "volcusum/changepoint.hpp"
#include "volcusum/cusum.hpp"
#include "volcusum/price_csv.hpp"
#include "volcusum/qv.hpp"
#include "volcusum/version.hpp"

namespace volcusum {

namespace {

using nlohmann::json;

DatedChangePoint dated(double theta, const PricePanel& prices) {
  DatedChangePoint cp;
  cp.theta = theta;
  cp.index = changepoint_day(theta, prices.num_days());
  cp.date = prices.days[cp.index - 1];
  return cp;
}

json change_point_json(const std::optional<DatedChangePoint>& cp) {
  if (!cp) return nullptr;
  return json{{"theta", cp->theta}, {"index", cp->index}, {"date", cp->date}};
}

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

AnalysisReport analyze(const PricePanel& prices, const AnalysisConfig& config) {
  config.test.validate();
  prices.validate();

  AnalysisReport report;
  report.config = config;
  report.days = prices.num_days();
  report.intervals = prices.intervals();
  report.first_day = prices.days.front();
  report.last_day = prices.days.back();

  const QVPanel qv = realized_qv(cidr_curves(prices));
  report.inference = run_inference(qv, config.test, 0);
  const InferenceResult& inf = report.inference;

  if (inf.longrun.clamped) {
    report.warnings.push_back("negative long-run variance estimate clamped to 0");
  }
  if (report.intervals > report.days) {
    report.warnings.push_back(
        "more intraday intervals than days (K > N); the pooled estimator is "
        "justified for K/N -> 0 only");
  }

  const double alpha = config.test.alpha;
  ChangePointReport& cps = report.change_points;
  cps.p_shape = inf.shape.p_value;
  cps.p_total = inf.total.p_value;
  cps.p_global = inf.global.p_value;
  if (inf.shape.rejects(alpha)) cps.shape = dated(inf.shape_cp.theta, prices);
  if (inf.total.rejects(alpha)) cps.total = dated(inf.total_cp.theta, prices);
  if (inf.global.rejects(alpha)) cps.pooled = dated(inf.pooled_theta, prices);
  return report;
}

AnalysisReport analyze(const AnalysisConfig& config) {
  return analyze(ingest_prices(config.input), config);
}

json config_json(const AnalysisConfig& config) {
  return json{{"input", config.input},
              {"mode", config.mode},
              {"alpha", config.test.alpha},
              {"draws", config.test.draws},
              {"series_j", config.test.series_terms},
              {"eigen_threshold", config.test.eigen_threshold},
              {"min_seg", config.min_seg},
              {"seed", config.test.seed}};
}

json to_json(const AnalysisReport& report) {
  const InferenceResult& inf = report.inference;
  const double alpha = report.config.test.alpha;

  json shape{{"statistic", inf.shape.statistic},
             {"p_value", inf.shape.p_value},
             {"reject", inf.shape.rejects(alpha)},
             {"eigenvalues", inf.spectrum.eigenvalues},
             {"components", inf.spectrum.components()},
             {"explained_fraction", inf.spectrum.explained_fraction}};
  json total{{"statistic", inf.total.statistic},
             {"p_value", inf.total.p_value},
             {"reject", inf.total.rejects(alpha)},
             {"long_run_variance", inf.longrun.value},
             {"ar_coefficient", inf.longrun.ar_coefficient},
             {"bandwidth", inf.longrun.bandwidth},
             {"lag", inf.longrun.lag}};
  json global{{"statistic", inf.global.statistic},
              {"p_value", inf.global.p_value},
              {"reject", inf.global.rejects(alpha)},
              {"p_shape", inf.shape.p_value},
              {"p_total", inf.total.p_value},
              {"distribution", "chi2_4"}};

  const ChangePointReport& cps = report.change_points;
  return json{
      {"tool", {{"name", "volcusum"}, {"version", kVersion}}},
      {"config", config_json(report.config)},
      {"panel",
       {{"days", report.days},
        {"intervals", report.intervals},
        {"first_day", report.first_day},
        {"last_day", report.last_day}}},
      {"tests", {{"shape", shape}, {"total", total}, {"global", global}}},
      {"change_points",
       {{"shape", change_point_json(cps.shape)},
        {"total", change_point_json(cps.total)},
        {"pooled", change_point_json(cps.pooled)}}},
      {"warnings", report.warnings},
  };
}

json to_json(const SegmentationResult& result, const AnalysisConfig& config,
             const PricePanel& prices) {
  json breaks = json::array();
  for (const auto& b : result.breaks) {
    breaks.push_back(json{{"index", b.day_index},
                          {"date", b.date},
                          {"theta", static_cast<double>(b.day_index) /
                                        static_cast<double>(prices.num_days())},
                          {"p_value", b.p_value},
                          {"segment_first_day", prices.days[b.segment_first]},
                          {"segment_last_day",
                           prices.days[b.segment_first + b.segment_days - 1]}});
  }
  return json{
      {"tool", {{"name", "volcusum"}, {"version", kVersion}}},
      {"config", config_json(config)},
      {"panel",
       {{"days", prices.num_days()},
        {"intervals", prices.intervals()},
        {"first_day", prices.days.empty() ? std::string() : prices.days.front()},
        {"last_day", prices.days.empty() ? std::string() : prices.days.back()}}},
      {"alpha", result.alpha},
      {"min_seg", result.min_seg},
      {"breaks", breaks},
      {"warnings", result.warnings},
  };
}

json error_json(const Error& error) {
  json details{{"kind", to_string(error.kind())}, {"message", error.what()}};
  details["line"] = error.line ? json(*error.line) : json(nullptr);
  details["row"] = error.row ? json(*error.row) : json(nullptr);
  details["column"] = error.column ? json(*error.column) : json(nullptr);
  return json{{"error", details}};
}

int exit_code(ErrorKind kind) { return kind == ErrorKind::Degenerate ? 3 : 2; }

void write_rejection_csv(std::ostream& out, const std::string& scenario,
                         const std::vector<RejectionTable>& tables) {
  out << "scenario,hypothesis,shape,n,k,theta,reps,level,shape_test,total_test,global_test\n";
  for (const auto& t : tables) {
    const ScenarioConfig& s = t.scenario;
    const std::string shape_label =
        s.hypothesis == Hypothesis::H0 || s.hypothesis == Hypothesis::GChange
            ? s.before().name()
            : s.before().name() + "->" + s.after().name();
    for (const auto& row : t.rows) {
      out << scenario << ',' << to_string(s.hypothesis) << ',' << shape_label << ','
          << s.days << ',' << s.intervals << ',' << number(s.theta) << ',' << t.reps << ','
          << number(row.level) << ',' << number(row.shape) << ',' << number(row.total) << ','
          << number(row.global) << '\n';
    }
  }
}

void write_replications_csv(std::ostream& out, const std::vector<ReplicationOutcome>& outcomes) {
  out << "rep,theta_shape,theta_total,theta_pooled,p_shape,p_total,p_global\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    out << i << ',' << number(o.theta_shape) << ',' << number(o.theta_total) << ','
        << number(o.theta_pooled) << ',' << number(o.p_shape) << ',' << number(o.p_total)
        << ',' << number(o.p_global) << '\n';
  }
}

void write_objective_csv(std::ostream& out, const PricePanel& prices) {
  const QVPanel qv = realized_qv(cidr_curves(prices));
  const StdQVPanel f = standardized_qv(qv);
  const LogTotalQV lq = log_total_qv(qv);
  const auto shape = cusum_objective(f.values);
  const auto total = cusum_objective(std::span<const double>(lq.values.data(), lq.num_days()));
  const double n = static_cast<double>(prices.num_days());
  out << "n,date,theta,shape_objective,total_objective\n";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    out << (i + 1) << ',' << prices.days[i] << ',' << number(static_cast<double>(i + 1) / n)
        << ',' << number(shape[i]) << ',' << number(total[i]) << '\n';
  }
}

}  // namespace volcusum
