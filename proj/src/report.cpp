#include "hartmankit/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <ostream>
#include <sstream>

#include "hartmankit/csv.hpp"

namespace hartmankit::report {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

void write_value(std::ostream& out, const Json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (v.is_number_float()) {
        const double d = v.get<double>();
        out << (std::isfinite(d) ? format_number(d) : "null");
    } else if (v.is_object()) {
        if (v.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        std::size_t i = 0;
        for (auto it = v.begin(); it != v.end(); ++it, ++i) {
            out << inner << Json(it.key()).dump() << ": ";
            write_value(out, it.value(), indent + 1);
            out << (i + 1 < v.size() ? ",\n" : "\n");
        }
        out << pad << "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            out << "[]";
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            out << inner;
            write_value(out, v[i], indent + 1);
            out << (i + 1 < v.size() ? ",\n" : "\n");
        }
        out << pad << "]";
    } else {
        out << v.dump(-1, ' ', false, Json::error_handler_t::replace);
    }
}

std::string scalar_text(const Json& v) {
    if (v.is_null())
        return "";
    if (v.is_number_float())
        return std::isfinite(v.get<double>()) ? format_number(v.get<double>()) : "";
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += "; ";
            out += scalar_text(v[i]);
        }
        return out;
    }
    return v.dump();
}

void flatten(const Json& v, const std::string& prefix, csv::Record& keys, csv::Record& values) {
    for (auto it = v.begin(); it != v.end(); ++it) {
        const auto key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it.value().is_object()) {
            flatten(it.value(), key, keys, values);
        } else {
            keys.push_back(key);
            values.push_back(scalar_text(it.value()));
        }
    }
}

} // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

double round_to_output(double v) {
    return std::strtod(format_number(v).c_str(), nullptr);
}

void write_json(std::ostream& out, const Json& value) {
    write_value(out, value, 0);
    out << '\n';
}

std::string dump_json(const Json& value) {
    std::ostringstream os;
    write_json(os, value);
    return os.str();
}

void write_csv(std::ostream& out, const Json& object) {
    csv::Record keys;
    csv::Record values;
    flatten(object, "", keys, values);
    csv::write_record(out, keys);
    csv::write_record(out, values);
}

void write_csv_table(std::ostream& out, const std::vector<Json>& rows) {
    if (rows.empty())
        return;
    csv::Record keys;
    csv::Record ignored;
    flatten(rows.front(), "", keys, ignored);
    csv::write_record(out, keys);
    for (const auto& row : rows) {
        csv::Record k;
        csv::Record v;
        flatten(row, "", k, v);
        csv::write_record(out, v);
    }
}

Json with_timestamp(const Json& object) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    Json out{{"generated_at", buf}};
    for (auto it = object.begin(); it != object.end(); ++it)
        out[it.key()] = it.value();
    return out;
}

Json to_json(const phasetime::TunnelingTimeReport& r) {
    Json esposito = Json::array();
    for (const auto& e : r.esposito)
        esposito.push_back(Json{{"form", e.name}, {"tau_A_s", e.tau_A}, {"tau_over_tau_A", e.tau_over_A}});
    return Json{
        {"family", r.family},
        {"omega_rad_per_s", r.omega},
        {"nu_Hz", r.nu},
        {"tau_phase_s", r.transmission.tau},
        {"tau_phase_error_s", r.transmission.error_estimate},
        {"tau_reflection_s", r.reflection ? Json(r.reflection->tau) : Json(nullptr)},
        {"T_universal_s", r.T_universal},
        {"tau_over_T", r.tau_over_T},
        {"esposito", esposito},
        {"esposito_consistent", opt(r.esposito_consistent)},
        {"kappa_d", opt(r.kappa_d)},
        {"dtau_dwidth_s_per_m", opt(r.dtau_dwidth)},
        {"mass_kg", opt(r.mass)},
        {"grid", Json{{"samples", r.grid_samples},
                      {"omega_start_rad_per_s", r.grid_start},
                      {"omega_stop_rad_per_s", r.grid_stop}}},
    };
}

Json to_json(const std::vector<phasetime::HartmanPoint>& scan) {
    Json rows = Json::array();
    for (const auto& p : scan)
        rows.push_back(Json{{"width_m", p.width},
                            {"tau_s", p.tau},
                            {"error_estimate_s", p.error_estimate},
                            {"kappa_d", p.kappa_d}});
    return rows;
}

Json to_json(const phasetime::LateralShift& s) {
    return Json{
        {"shift_m", s.shift},
        {"error_estimate_m", s.error_estimate},
        {"kappa_d", s.kappa_d},
        {"ill_conditioned", s.ill_conditioned},
        {"tangential_wavenumber_per_m", s.tangential_wavenumber},
        {"trace_velocity_m_per_s", s.trace_velocity},
        {"interaction_time_s", s.interaction_time},
        {"beam_velocity_component_m_per_s", s.beam_velocity_component},
    };
}

Json to_json(const packets::ArrivalReport& r) {
    return Json{
        {"t_peak_incident_reference_s", r.t_peak_incident_reference},
        {"t_peak_transmitted_s", r.t_peak_transmitted},
        {"t_peak_reflected_s", opt(r.t_peak_reflected)},
        {"delay_transmitted_s", r.delay_transmitted},
        {"delay_reflected_s", opt(r.delay_reflected)},
        {"coincidence_s", opt(r.coincidence)},
        {"t_perp_s", opt(r.t_perp)},
        {"period_T_s", r.period},
        {"coincidence_over_T", r.coincidence ? Json(*r.coincidence / r.period) : Json(nullptr)},
        {"kappa_d", opt(r.kappa_d)},
        {"energy_incident", r.energy_incident},
        {"energy_transmitted", r.energy_transmitted},
        {"energy_reflected", r.energy_reflected},
        {"grid", Json{{"samples", r.samples},
                      {"time_step_s", r.time_step},
                      {"spectral_spacing_Hz", r.spectral_spacing},
                      {"spectral_lines", r.spectral_lines}}},
        {"warnings", r.warnings},
    };
}

Json to_json(const reference::ExperimentRow& row) {
    return Json{
        {"name", row.name},
        {"reference", row.reference_label},
        {"tau_s", row.tau_measured},
        {"T_s", row.T},
        {"tauA_s", row.tau_A},
        {"family", std::string(reference::to_string(row.family))},
        {"tau_over_T", row.tau_measured / row.T},
        {"note", row.provenance_note},
    };
}

Json to_json(const reference::ReproductionReport& r) {
    return Json{
        {"row", r.row},
        {"family", std::string(reference::to_string(r.family))},
        {"status", r.status == reference::ReproductionStatus::reproduced ? "reproduced"
                                                                          : "incomplete"},
        {"tau_over_T", r.tau_over_T},
        {"T_recomputed_s", opt(r.T_recomputed)},
        {"T_relative_deviation", opt(r.T_relative_deviation)},
        {"tauA_recomputed_s", opt(r.tau_A_recomputed)},
        {"tauA_relative_deviation", opt(r.tau_A_relative_deviation)},
        {"tauA_sqrt_form_s", opt(r.tau_A_sqrt_form)},
        {"esposito_consistent", opt(r.esposito_consistent)},
        {"A_factor", opt(r.A_factor)},
        {"mass", opt(r.mass)},
        {"note", r.note},
    };
}

Json to_json(const reference::UniversalitySummary& s) {
    Json ratios = Json::array();
    for (const auto& [name, ratio] : s.ratios)
        ratios.push_back(Json{{"row", name}, {"tau_over_T", ratio}});
    return Json{
        {"rows", ratios},
        {"min_tau_over_T", s.min},
        {"max_tau_over_T", s.max},
        {"median_tau_over_T", s.median},
        {"outside_0.05_1.5", s.outside_wide_band},
        {"non_ionization_outside_0.8_1.2", s.outside_core_band},
    };
}

Json to_json(const universal::EspositoQuantumResult& r) {
    return Json{{"tau_form_sqrt_s", r.tau_form_sqrt},
                {"tau_form_ratio_s", r.tau_form_ratio},
                {"consistent", r.consistent}};
}

Json to_json(const universal::EspositoFtirResult& r) {
    return Json{{"tau_A_s", r.tau_A}, {"A", r.A}, {"near_critical", r.near_critical}};
}

} // namespace hartmankit::report
