#include "qthermo/series_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include "qthermo/errors.hpp"

namespace qthermo {

std::vector<SeriesRow> make_rows(const std::vector<QubitState>& states,
                                 const std::vector<ThermoSample>& ledger) {
    if (states.size() != ledger.size()) {
        throw ParameterOutOfRange("make_rows: states and ledger lengths differ");
    }
    std::vector<SeriesRow> rows;
    rows.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& st = states[i];
        const auto& sm = ledger[i];
        rows.push_back({sm.tau, st.x, st.y, st.z, sm.S, sm.dS, sm.dQ,
                        sm.sigma, sm.Sigma, sm.relent});
    }
    return rows;
}

SeriesFormat parse_format(const std::string& name) {
    if (name == "csv") return SeriesFormat::Csv;
    if (name == "json") return SeriesFormat::Json;
    throw ParameterOutOfRange("format must be csv or json, got '" + name + "'");
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw IoError("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

constexpr const char* kHeader = "tau,x,y,z,S,dS,dQ,sigma,Sigma,relent";

void emit_csv(std::ostream& os, const std::vector<SeriesRow>& rows,
              const ConfigItems& config) {
    for (const auto& [key, value] : config) os << "# " << key << "=" << value << "\n";
    os << kHeader << "\n";
    for (const auto& r : rows) {
        os << format_double(r.tau) << ',' << format_double(r.x) << ','
           << format_double(r.y) << ',' << format_double(r.z) << ','
           << format_double(r.S) << ',' << format_double(r.dS) << ','
           << format_double(r.dQ) << ',' << format_double(r.sigma) << ','
           << format_double(r.Sigma) << ',' << format_double(r.relent) << '\n';
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(c));
            out += buf;
        } else {
            out += c;
        }
    }
    return out;
}

void emit_json(std::ostream& os, const std::vector<SeriesRow>& rows,
               const ConfigItems& config) {
    os << "{\n  \"config\": {";
    for (std::size_t i = 0; i < config.size(); ++i) {
        os << (i == 0 ? "\n" : ",\n") << "    \"" << json_escape(config[i].first)
           << "\": \"" << json_escape(config[i].second) << "\"";
    }
    os << (config.empty() ? "" : "\n  ") << "},\n  \"series\": [";
    const char* keys[10] = {"tau", "x", "y", "z", "S", "dS", "dQ", "sigma", "Sigma", "relent"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double vals[10] = {r.tau, r.x, r.y, r.z, r.S, r.dS, r.dQ,
                                 r.sigma, r.Sigma, r.relent};
        os << (i == 0 ? "\n" : ",\n") << "    {";
        for (int k = 0; k < 10; ++k) {
            os << (k == 0 ? "" : ", ") << "\"" << keys[k] << "\": " << format_double(vals[k]);
        }
        os << "}";
    }
    os << "\n  ]\n}\n";
}

} // namespace

void emit_series(std::ostream& os, const std::vector<SeriesRow>& rows,
                 SeriesFormat format, const ConfigItems& config) {
    if (rows.empty()) throw IoError("emit_series: refusing to write an empty series");
    for (const auto& r : rows) {
        const double vals[10] = {r.tau, r.x, r.y, r.z, r.S, r.dS, r.dQ,
                                 r.sigma, r.Sigma, r.relent};
        for (double v : vals) {
            if (!std::isfinite(v)) {
                throw IoError("emit_series: non-finite value at tau = " + format_double(r.tau));
            }
        }
    }
    if (format == SeriesFormat::Csv) {
        emit_csv(os, rows, config);
    } else {
        emit_json(os, rows, config);
    }
    if (!os) throw IoError("emit_series: stream failed while writing");
}

void emit_series(const std::string& path, const std::vector<SeriesRow>& rows,
                 SeriesFormat format, const ConfigItems& config) {
    if (path == "-") {
        emit_series(std::cout, rows, format, config);
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("emit_series: cannot open '" + path + "' for writing");
    emit_series(out, rows, format, config);
}

} // namespace qthermo
