#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qthermo/qstate.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {

// One output record: Bloch components interleaved with the ledger.
struct SeriesRow {
    double tau, x, y, z, S, dS, dQ, sigma, Sigma, relent;
};

std::vector<SeriesRow> make_rows(const std::vector<QubitState>& states,
                                 const std::vector<ThermoSample>& ledger);

enum class SeriesFormat { Csv, Json };

SeriesFormat parse_format(const std::string& name);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

using ConfigItems = std::vector<std::pair<std::string, std::string>>;

// CSV: '#'-prefixed key=value lines with the resolved configuration, then the
// fixed header and one row per sample. JSON: object with "config" and "series".
void emit_series(std::ostream& os, const std::vector<SeriesRow>& rows,
                 SeriesFormat format, const ConfigItems& config);

// Writes to path, or stdout when path is "-"; throws IoError when the stream
// cannot be opened or the series is empty.
void emit_series(const std::string& path, const std::vector<SeriesRow>& rows,
                 SeriesFormat format, const ConfigItems& config);

} // namespace qthermo
