#include "lierank/io.hpp"

#include <cstdio>

namespace lierank {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

json to_json(const PauliOperator& op) {
    json terms = json::array();
    for (const auto& [w, c] : op.terms())
        terms.push_back({{"string", word_to_text(w, op.n_qubits())}, {"coeff", c}});
    return {{"n_qubits", op.n_qubits()}, {"terms", terms}};
}

PauliOperator operator_from_json(const json& j) {
    PauliOperator op(j.at("n_qubits").get<int>());
    for (const auto& t : j.at("terms")) {
        op.add(PauliString::from_text(t.at("string").get<std::string>()),
               t.at("coeff").get<double>());
    }
    return op;
}

json to_json(const HamiltonianSpec& spec) {
    json terms = json::array();
    for (const auto& term : spec.terms) {
        for (const auto& [w, c] : term.op.terms()) {
            terms.push_back({{"string", word_to_text(w, spec.n_qubits)},
                             {"coeff", c},
                             {"label", term.label}});
        }
        if (term.op.empty()) {
            // zero atoms keep their slot in the partition index space
            terms.push_back({{"string", std::string(static_cast<std::size_t>(spec.n_qubits), 'I')},
                             {"coeff", 0.0},
                             {"label", term.label}});
        }
    }
    return {{"n_qubits", spec.n_qubits}, {"terms", terms}};
}

HamiltonianSpec hamiltonian_from_json(const json& j) {
    HamiltonianSpec spec;
    spec.n_qubits = j.at("n_qubits").get<int>();
    for (const auto& t : j.at("terms")) {
        const std::string label =
            t.contains("label") ? t.at("label").get<std::string>() : t.at("string").get<std::string>();
        const PauliString s = PauliString::from_text(t.at("string").get<std::string>());
        if (s.n_qubits != spec.n_qubits)
            throw SizeMismatchError("Hamiltonian term string width differs from n_qubits");
        const double coeff = t.at("coeff").get<double>();
        if (!spec.terms.empty() && spec.terms.back().label == label) {
            spec.terms.back().op.add(s, coeff);
        } else {
            PauliOperator op(spec.n_qubits);
            op.add(s, coeff);
            spec.terms.push_back({std::move(op), label});
        }
    }
    return spec;
}

json to_json(const Partition& p) {
    return {{"n_items", p.n_items}, {"blocks", p.blocks}};
}

json to_json(const StateVector& state) {
    json amplitudes = json::array();
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
        amplitudes.push_back({state.amplitudes[i].real(), state.amplitudes[i].imag()});
    return {{"n_qubits", state.n_qubits}, {"amplitudes", amplitudes}};
}

StateVector statevector_from_json(const json& j) {
    StateVector state;
    state.n_qubits = j.at("n_qubits").get<int>();
    const auto& amplitudes = j.at("amplitudes");
    state.amplitudes.resize(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
        state.amplitudes[static_cast<Eigen::Index>(i)] = {amplitudes[i][0].get<double>(),
                                                          amplitudes[i][1].get<double>()};
    return state;
}

Partition partition_from_json(const json& j) {
    return Partition::from_blocks(j.at("n_items").get<int>(),
                                  j.at("blocks").get<std::vector<std::vector<int>>>());
}

json to_json(const ClosureTrace& trace, bool include_basis) {
    json out = {{"n_qubits", trace.n_qubits},
                {"rank_per_iteration", trace.rank_per_iteration},
                {"final_rank", trace.final_rank()},
                {"identity_in_span", trace.identity_in_span},
                {"reached_cap", trace.reached_cap},
                {"truncated", trace.truncated}};
    if (include_basis && !trace.basis.empty()) {
        json basis = json::array();
        for (const auto& op : trace.basis)
            basis.push_back(to_json(op));
        out["basis"] = basis;
    }
    return out;
}

json to_json(const ProxyModel& model) {
    json per_m = json::array();
    for (const auto& c : model.curves) {
        json nodes = json::array();
        for (const auto& [x, y] : c.nodes)
            nodes.push_back({x, y});
        per_m.push_back({{"m", c.m},
                         {"a", c.a},
                         {"alpha", c.alpha},
                         {"beta", c.beta},
                         {"p_min", c.p_min},
                         {"step_fallback", c.step_fallback},
                         {"nodes", nodes}});
    }
    return {{"k", model.k}, {"per_m", per_m}};
}

ProxyModel proxy_model_from_json(const json& j) {
    ProxyModel model;
    model.k = j.at("k").get<int>();
    for (const auto& c : j.at("per_m")) {
        ProxyCurve curve;
        curve.m = c.at("m").get<int>();
        curve.a = c.at("a").get<double>();
        curve.alpha = c.at("alpha").get<double>();
        curve.beta = c.at("beta").get<double>();
        curve.p_min = c.at("p_min").get<double>();
        curve.step_fallback = c.at("step_fallback").get<bool>();
        for (const auto& n : c.at("nodes"))
            curve.nodes.emplace_back(n[0].get<double>(), n[1].get<double>());
        model.curves.push_back(std::move(curve));
    }
    return model;
}

json to_json(const VqeRun& run) {
    json restarts = json::array();
    for (const auto& r : run.restart_results) {
        restarts.push_back(
            {{"energy", r.energy}, {"evaluations", r.evaluations}, {"iterations", r.iterations}});
    }
    return {{"kind", run.kind == AnsatzKind::LAP ? "LAP" : "VHA"},
            {"layers", run.layers},
            {"n_params", run.n_params},
            {"seed", run.seed},
            {"restarts", run.settings.restarts},
            {"best_energy", run.best_energy},
            {"best_params", run.best_params},
            {"energy_history", run.energy_history},
            {"restart_results", restarts},
            {"total_evaluations", run.total_evaluations}};
}

json to_json(const CalibrationReport& report) {
    json grid = json::array();
    for (const auto& p : report.grid) {
        grid.push_back({{"J", p.J},
                        {"h", p.h},
                        {"energy", p.energy},
                        {"energy_per_site", p.energy_per_site}});
    }
    return {{"reference_energy", report.reference_energy},
            {"tolerance", report.tolerance},
            {"matched", report.matched},
            {"grid", grid},
            {"closest", {{"J", report.closest.J},
                         {"h", report.closest.h},
                         {"energy", report.closest.energy},
                         {"energy_per_site", report.closest.energy_per_site}}},
            {"default_J", report.default_J},
            {"default_delta", report.default_delta},
            {"default_h", report.default_h},
            {"default_ground_energy", report.default_ground_energy}};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), n_columns_(header.size()), path_(path) {
    if (!out_)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_)
        throw std::logic_error("CSV row width mismatch in " + path_.string());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out_ << ',';
        const std::string& cell = cells[i];
        if (cell.find_first_of(",\"\n") != std::string::npos) {
            out_ << '"';
            for (char c : cell) {
                if (c == '"')
                    out_ << '"';
                out_ << c;
            }
            out_ << '"';
        } else {
            out_ << cell;
        }
    }
    out_ << '\n';
    if (!out_)
        throw std::runtime_error("write failed on " + path_.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write failed on " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return json::parse(in);
}

} // namespace lierank
