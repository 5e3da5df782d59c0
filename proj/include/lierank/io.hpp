#pragma once

#include "lierank/closure.hpp"
#include "lierank/models.hpp"
#include "lierank/partitions.hpp"
#include "lierank/proxy.hpp"
#include "lierank/statevector.hpp"
#include "lierank/vqe.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>

namespace lierank {

using json = nlohmann::json;

// floats at 12 significant digits, the format used in every CSV
std::string format_double(double value);

json to_json(const PauliOperator& op);
PauliOperator operator_from_json(const json& j);

// Flat {string, coeff, label} entries; consecutive entries sharing a label
// form one term (that is how aggregated atoms like a summed field survive
// the round trip).
json to_json(const HamiltonianSpec& spec);
HamiltonianSpec hamiltonian_from_json(const json& j);

json to_json(const Partition& p);
Partition partition_from_json(const json& j);

// amplitudes as [re, im] pairs, for debugging dumps
json to_json(const StateVector& state);
StateVector statevector_from_json(const json& j);

json to_json(const ClosureTrace& trace, bool include_basis = true);

json to_json(const ProxyModel& model);
ProxyModel proxy_model_from_json(const json& j);

json to_json(const VqeRun& run);
json to_json(const CalibrationReport& report);

// One CSV file: header first, rows of preformatted cells, floats via
// format_double.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);

    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(std::string v) { return v; }

private:
    std::ofstream out_;
    std::size_t n_columns_;
    std::filesystem::path path_;
};

void write_json_file(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

} // namespace lierank
