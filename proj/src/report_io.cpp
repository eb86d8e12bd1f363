#include "hdwn/report_io.hpp"

#include "hdwn/errors.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>

namespace hdwn {

using nlohmann::json;

namespace {

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::vector<std::string> table_columns(const ExperimentSpec& spec) {
  std::vector<std::string> names;
  for (std::int64_t a : spec.orders) names.push_back(order_column_name(a));
  names.emplace_back(kAdaptiveColumn);
  if (spec.study == StudyKind::power && spec.baselines) {
    names.emplace_back(kMaxColumn);
    names.emplace_back(kSumColumn);
  }
  return names;
}

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::config, std::string("study config is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, std::string("study config field '") + key + "': " + e.what());
  }
}

template <class T>
T optional_field(const json& j, const char* key, T fallback) {
  return j.contains(key) ? required<T>(j, key) : fallback;
}

}  // namespace

json report_to_json(const UStatReport& report, const TestConfig& cfg, const ReportInput& input,
                    double wall_seconds) {
  json orders = json::array();
  for (const OrderResult& r : report.orders) {
    json o = {{"a", r.a},
              {"ok", r.ok},
              {"u_raw", number(r.u_raw)},
              {"sigma_hat", number(r.sigma_hat)},
              {"z", number(r.z)},
              {"p_value", number(r.p_value)},
              {"reject", r.reject}};
    if (r.error) o["error"] = {{"code", to_string(*r.error)}, {"message", r.message}};
    orders.push_back(std::move(o));
  }
  return {
      {"software_version", kSoftwareVersion},
      {"input", {{"source", input.source}, {"p", input.p}, {"T", input.T}}},
      {"config",
       {{"q", cfg.q},
        {"orders", cfg.orders},
        {"alpha", cfg.alpha},
        {"demean", cfg.demean},
        {"scale", cfg.scale}}},
      {"critical_z", number(report.critical_z)},
      {"orders", std::move(orders)},
      {"adaptive",
       {{"ok", report.adaptive.ok},
        {"orders_combined", report.orders.size()},
        {"z", number(report.adaptive.z)},
        {"p_value", number(report.adaptive.p_value)},
        {"reject", report.adaptive.reject}}},
      {"warnings", report.warnings},
      {"wall_time_seconds", wall_seconds},
  };
}

ExperimentSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::config, "study config must be a JSON object");
  static const std::set<std::string> known = {
      "study", "model",  "cov_kind", "innov",     "coeff_kind", "coeff_value",
      "ratios", "Ts",    "q",        "orders",    "alpha",      "nreps",
      "master_seed",     "baselines", "calibration_reps",       "redraw_factor"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw Error(ErrorCode::config, "unknown study config field '" + item.key() + "'");
    }
  }
  ExperimentSpec spec;
  spec.study = parse_study_kind(required<std::string>(j, "study"));
  spec.model = parse_model_kind(
      optional_field<std::string>(j, "model", spec.study == StudyKind::size ? "null" : ""));
  spec.cov_kind = parse_cov_kind(optional_field<std::string>(j, "cov_kind", "identity"));
  spec.innov = parse_innovation(optional_field<std::string>(j, "innov", "gaussian"));
  const std::string coeff = optional_field<std::string>(j, "coeff_kind", "none");
  if (coeff != "none") spec.coeff_kind = parse_coeff_kind(coeff);
  if (j.contains("coeff_value")) spec.coeff_value = required<double>(j, "coeff_value");
  spec.ratios = required<std::vector<double>>(j, "ratios");
  spec.Ts = required<std::vector<std::int64_t>>(j, "Ts");
  spec.q = optional_field<std::int64_t>(j, "q", spec.q);
  spec.orders = optional_field<std::vector<std::int64_t>>(j, "orders", spec.orders);
  spec.alpha = optional_field<double>(j, "alpha", spec.alpha);
  spec.nreps = optional_field<std::int64_t>(j, "nreps", spec.nreps);
  spec.master_seed = optional_field<std::uint64_t>(j, "master_seed", spec.master_seed);
  spec.baselines = optional_field<bool>(j, "baselines", spec.baselines);
  spec.calibration_reps = optional_field<std::int64_t>(j, "calibration_reps", spec.calibration_reps);
  spec.redraw_factor = optional_field<bool>(j, "redraw_factor", spec.redraw_factor);
  spec.validate();
  return spec;
}

json spec_to_json(const ExperimentSpec& spec) {
  json j = {{"study", to_string(spec.study)},
            {"model", to_string(spec.model)},
            {"cov_kind", to_string(spec.cov_kind)},
            {"innov", to_string(spec.innov)},
            {"coeff_kind", spec.coeff_kind ? std::string(to_string(*spec.coeff_kind)) : "none"},
            {"ratios", spec.ratios},
            {"Ts", spec.Ts},
            {"q", spec.q},
            {"orders", spec.orders},
            {"alpha", spec.alpha},
            {"nreps", spec.nreps},
            {"master_seed", spec.master_seed},
            {"baselines", spec.baselines},
            {"calibration_reps", spec.calibration_reps},
            {"redraw_factor", spec.redraw_factor}};
  if (spec.coeff_value) j["coeff_value"] = *spec.coeff_value;
  return j;
}

std::string table_to_csv(const ResultTable& table) {
  const std::vector<std::string> names = table_columns(table.spec);
  std::ostringstream out;
  out << "scenario,ratio,p,T,nreps,status";
  for (const std::string& n : names) out << ',' << n;
  for (const std::string& n : names) out << ',' << n << "_se";
  for (const std::string& n : names) out << ',' << n << "_mean";
  out << ",cv_M_q,cv_S_q\n";
  for (const CellResult& cell : table.cells) {
    out << cell.scenario << ',' << format("%g", cell.ratio) << ',' << cell.p << ',' << cell.T
        << ',' << table.spec.nreps << ',' << (cell.skipped ? "skipped" : "ok");
    auto emit = [&](auto field) {
      for (const std::string& n : names) {
        out << ',';
        if (!cell.skipped) out << field(cell.column(n));
      }
    };
    emit([](const StatisticColumn& c) { return format("%.3f", c.rate_pct); });
    emit([](const StatisticColumn& c) { return format("%.3f", c.se_pct); });
    emit([](const StatisticColumn& c) { return format("%.17g", c.mean_value); });
    out << ',' << (cell.cv_max ? format("%.17g", *cell.cv_max) : "");
    out << ',' << (cell.cv_sum ? format("%.17g", *cell.cv_sum) : "");
    out << '\n';
  }
  return out.str();
}

json table_to_json(const ResultTable& table, double wall_seconds) {
  json cells = json::array();
  for (const CellResult& cell : table.cells) {
    json stats = json::array();
    for (const StatisticColumn& c : cell.stats) {
      stats.push_back({{"name", c.name},
                       {"rate_pct", c.rate_pct},
                       {"se_pct", c.se_pct},
                       {"mean", number(c.mean_value)},
                       {"failures", c.failures}});
    }
    json entry = {{"cell_id", cell.cell_id},
                  {"ratio", cell.ratio},
                  {"p", cell.p},
                  {"T", cell.T},
                  {"scenario", cell.scenario},
                  {"skipped", cell.skipped},
                  {"statistics", std::move(stats)},
                  {"critical_values",
                   {{"M_q", cell.cv_max ? json(*cell.cv_max) : json(nullptr)},
                    {"S_q", cell.cv_sum ? json(*cell.cv_sum) : json(nullptr)}}},
                  {"seconds", cell.seconds}};
    if (cell.skipped) entry["skip_reason"] = cell.skip_reason;
    cells.push_back(std::move(entry));
  }
  return {{"software_version", kSoftwareVersion},
          {"spec", spec_to_json(table.spec)},
          {"streams",
           {{"master_seed", table.spec.master_seed},
            {"data", "derive_rep_rng(master_seed, cell_id, rep)"},
            {"calibration", "derive_rep_rng(master_seed, cell_id | 2^40, rep)"},
            {"design", "derive_rep_rng(master_seed, cell_id | 2^41, 0)"}}},
          {"cells", std::move(cells)},
          {"wall_time_seconds", wall_seconds}};
}

}  // namespace hdwn
