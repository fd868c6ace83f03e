#include "zne/noise_model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace zne {

namespace {

void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(what + " must be a probability in [0, 1], got " + std::to_string(p));
    }
}

} // namespace

NoiseModel::NoiseModel(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0) {
        throw std::invalid_argument("qubit count must be non-negative");
    }
}

void NoiseModel::set_two_qubit_error(int i, int j, double p) {
    if (i < 0 || j < 0 || i >= num_qubits_ || j >= num_qubits_ || i == j) {
        throw std::out_of_range("invalid qubit pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    check_probability(p, "two-qubit error");
    auto [it, inserted] = two_qubit_.emplace(std::pair{i, j}, p);
    if (!inserted && it->second != p) {
        throw std::invalid_argument("conflicting values for pair " + std::to_string(i) + "_" + std::to_string(j));
    }
}

void NoiseModel::set_one_qubit_error(int q, double p) {
    if (q < 0 || q >= num_qubits_) throw std::out_of_range("invalid qubit " + std::to_string(q));
    check_probability(p, "one-qubit error");
    one_qubit_[q] = p;
}

void NoiseModel::set_readout(int q, ReadoutError r) {
    if (q < 0 || q >= num_qubits_) throw std::out_of_range("invalid qubit " + std::to_string(q));
    check_probability(r.p_meas0_prep1, "readout error");
    check_probability(r.p_meas1_prep0, "readout error");
    readout_[q] = r;
}

bool NoiseModel::coupled(int i, int j) const {
    return two_qubit_.count({i, j}) > 0 || two_qubit_.count({j, i}) > 0;
}

double NoiseModel::error(int i, int j) const {
    if (auto it = two_qubit_.find({i, j}); it != two_qubit_.end()) return it->second;
    if (auto it = two_qubit_.find({j, i}); it != two_qubit_.end()) return it->second;
    throw NoCouplingError("no coupling between qubits " + std::to_string(i) + " and " + std::to_string(j));
}

double NoiseModel::one_qubit_error(int q) const {
    auto it = one_qubit_.find(q);
    return it == one_qubit_.end() ? 0.0 : it->second;
}

ReadoutError NoiseModel::readout(int q) const {
    auto it = readout_.find(q);
    return it == readout_.end() ? ReadoutError{} : it->second;
}

std::vector<std::pair<int, int>> NoiseModel::edges() const {
    std::set<std::pair<int, int>> uniq;
    for (const auto& [pair, _] : two_qubit_) {
        uniq.emplace(std::min(pair.first, pair.second), std::max(pair.first, pair.second));
    }
    return {uniq.begin(), uniq.end()};
}

NoiseModel NoiseModel::restricted(const std::vector<int>& device_qubits) const {
    NoiseModel out(static_cast<int>(device_qubits.size()));
    out.backend = backend;
    out.date = date;
    std::map<int, int> to_local;
    for (size_t k = 0; k < device_qubits.size(); ++k) {
        const int q = device_qubits[k];
        if (q < 0 || q >= num_qubits_) throw std::out_of_range("device qubit out of range");
        if (!to_local.emplace(q, static_cast<int>(k)).second) {
            throw std::invalid_argument("duplicate device qubit in restriction");
        }
    }
    for (const auto& [pair, p] : two_qubit_) {
        auto a = to_local.find(pair.first);
        auto b = to_local.find(pair.second);
        if (a != to_local.end() && b != to_local.end()) {
            out.two_qubit_[{a->second, b->second}] = p;
        }
    }
    for (const auto& [q, p] : one_qubit_) {
        if (auto it = to_local.find(q); it != to_local.end()) out.one_qubit_[it->second] = p;
    }
    for (const auto& [q, r] : readout_) {
        if (auto it = to_local.find(q); it != to_local.end()) out.readout_[it->second] = r;
    }
    return out;
}

bool NoiseModel::operator==(const NoiseModel& other) const {
    return num_qubits_ == other.num_qubits_ && two_qubit_ == other.two_qubit_ &&
           one_qubit_ == other.one_qubit_ && readout_ == other.readout_ &&
           backend == other.backend && date == other.date;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

std::pair<int, int> parse_pair_key(const std::string& key) {
    const auto sep = key.find('_');
    if (sep == std::string::npos) {
        throw std::invalid_argument("pair key must look like 'i_j', got '" + key + "'");
    }
    try {
        return {std::stoi(key.substr(0, sep)), std::stoi(key.substr(sep + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("pair key must look like 'i_j', got '" + key + "'");
    }
}

} // namespace

NoiseModel parse_noise_model_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed noise model JSON: ") + e.what());
    }
    NoiseModel model(doc.at("num_qubits").get<int>());
    model.backend = doc.value("backend", "");
    model.date = doc.value("date", "");
    if (doc.contains("one_qubit_error")) {
        for (const auto& [key, value] : doc.at("one_qubit_error").items()) {
            model.set_one_qubit_error(std::stoi(key), value.get<double>());
        }
    }
    if (doc.contains("readout")) {
        for (const auto& [key, value] : doc.at("readout").items()) {
            if (!value.is_array() || value.size() != 2) {
                throw std::invalid_argument("readout entry must be [p01, p10]");
            }
            model.set_readout(std::stoi(key), {value[0].get<double>(), value[1].get<double>()});
        }
    }
    if (doc.contains("two_qubit_error")) {
        for (const auto& [key, value] : doc.at("two_qubit_error").items()) {
            auto [i, j] = parse_pair_key(key);
            model.set_two_qubit_error(i, j, value.get<double>());
        }
    }
    return model;
}

std::string noise_model_to_json(const NoiseModel& model) {
    nlohmann::json doc;
    doc["backend"] = model.backend;
    doc["date"] = model.date;
    doc["num_qubits"] = model.num_qubits();
    auto& one = doc["one_qubit_error"] = nlohmann::json::object();
    for (const auto& [q, p] : model.one_qubit_errors()) one[std::to_string(q)] = p;
    auto& readout = doc["readout"] = nlohmann::json::object();
    for (const auto& [q, r] : model.readout_errors()) {
        readout[std::to_string(q)] = {r.p_meas0_prep1, r.p_meas1_prep0};
    }
    auto& two = doc["two_qubit_error"] = nlohmann::json::object();
    for (const auto& [pair, p] : model.two_qubit_errors()) {
        two[std::to_string(pair.first) + "_" + std::to_string(pair.second)] = p;
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV (calibration table layout)
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct CsvRow {
    int qubit = -1;
    std::map<std::string, std::string> fields; // column name -> raw value
};

} // namespace

NoiseModel parse_noise_model_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
    std::string backend, date;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped[0] == '#') {
            // optional metadata lines: "# backend: name", "# date: value"
            const auto colon = stripped.find(':');
            if (colon != std::string::npos) {
                const std::string key = trim(stripped.substr(1, colon - 1));
                const std::string value = trim(stripped.substr(colon + 1));
                if (key == "backend") backend = value;
                if (key == "date") date = value;
            }
            continue;
        }
        auto cells = split(stripped, ',');
        if (header.empty()) {
            header = cells;
            if (header.empty() || header[0] != "Qubit") {
                throw std::invalid_argument("calibration CSV must start with a 'Qubit' header column");
            }
            continue;
        }
        CsvRow row;
        for (size_t i = 0; i < cells.size() && i < header.size(); ++i) {
            row.fields[header[i]] = cells[i];
        }
        try {
            row.qubit = std::stoi(row.fields.at("Qubit"));
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": bad qubit index");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("calibration CSV has no data rows");

    int max_qubit = 0;
    for (const auto& row : rows) max_qubit = std::max(max_qubit, row.qubit);
    // CNOT entries may reference qubits beyond the row set
    for (const auto& row : rows) {
        auto it = row.fields.find("CNOT error");
        if (it == row.fields.end() || it->second.empty() || it->second == "0") continue;
        for (const auto& entry : split(it->second, ';')) {
            if (entry.empty()) continue;
            const auto colon = entry.find(':');
            if (colon == std::string::npos) {
                throw std::invalid_argument("malformed CNOT error entry '" + entry + "'");
            }
            auto [i, j] = parse_pair_key(entry.substr(0, colon));
            max_qubit = std::max({max_qubit, i, j});
        }
    }

    NoiseModel model(max_qubit + 1);
    model.backend = backend;
    model.date = date;

    for (const auto& row : rows) {
        const int q = row.qubit;
        ReadoutError readout;
        bool have_readout = false;
        for (const auto& [column, raw] : row.fields) {
            if (column == "Qubit" || raw.empty()) continue;
            if (column == "CNOT error") {
                if (raw == "0") continue; // isolated qubit marker
                for (const auto& entry : split(raw, ';')) {
                    if (entry.empty()) continue;
                    const auto colon = entry.find(':');
                    auto [i, j] = parse_pair_key(entry.substr(0, colon));
                    const double p = std::stod(entry.substr(colon + 1));
                    model.set_two_qubit_error(i, j, p);
                }
                continue;
            }
            double value = 0.0;
            try {
                value = std::stod(raw);
            } catch (const std::exception&) {
                throw std::invalid_argument("malformed value '" + raw + "' in column '" + column + "'");
            }
            if (column == "Prob meas0 prep1") {
                readout.p_meas0_prep1 = value;
                have_readout = true;
            } else if (column == "Prob meas1 prep0") {
                readout.p_meas1_prep0 = value;
                have_readout = true;
            } else if (column == "Pauli-X error") {
                model.set_one_qubit_error(q, value);
            } else {
                model.extra_columns[column][q] = value;
            }
        }
        if (have_readout) model.set_readout(q, readout);
    }
    return model;
}

NoiseModel load_noise_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open noise model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        NoiseModel model = parse_noise_model_csv(text);
        if (model.backend.empty()) {
            auto slash = path.find_last_of("/\\");
            auto stem = path.substr(slash == std::string::npos ? 0 : slash + 1);
            model.backend = stem.substr(0, stem.size() - 4);
        }
        return model;
    }
    return parse_noise_model_json(text);
}

} // namespace zne
