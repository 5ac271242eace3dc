#include "mubtomo/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mubtomo {

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string scheme_to_json(const MeasurementScheme& scheme) {
    json j;
    j["name"] = scheme.name;
    j["dim"] = scheme.dim;
    j["num_qubits"] = scheme.num_qubits;
    j["visibility"] = scheme.visibility;
    json bases = json::array();
    for (const auto& basis : scheme.bases) {
        json jb;
        jb["index"] = basis.index;
        jb["entangled"] = basis.entangled;
        json elements = json::array();
        for (const auto& el : basis.elements) {
            json je;
            je["label"] = el.label;
            je["rank"] = el.rank;
            je["matrix"] = matrix_to_json(el.matrix);
            elements.push_back(std::move(je));
        }
        jb["elements"] = std::move(elements);
        bases.push_back(std::move(jb));
    }
    j["bases"] = std::move(bases);
    return j.dump(2) + "\n";
}

void save_scheme(const std::string& path, const MeasurementScheme& scheme) {
    write_text_file(path, scheme_to_json(scheme));
}

std::string count_data_to_json(const CountData& counts, const MeasurementScheme* scheme) {
    json j;
    j["scheme"] = counts.scheme_name;
    j["visibility"] = counts.visibility;
    j["dim"] = counts.dim;
    j["model"] = to_string(counts.model);
    j["seed"] = counts.seed;
    j["stream_id"] = counts.stream_id;
    j["n_total"] = counts.n_total;
    json rows = json::array();
    for (std::size_t b = 0; b < counts.counts.size(); ++b) {
        json row;
        row["basis"] = b;
        if (scheme != nullptr && b < scheme->bases.size()) {
            json labels = json::array();
            for (const auto& el : scheme->bases[b].elements) {
                labels.push_back(el.label);
            }
            row["labels"] = std::move(labels);
        }
        row["counts"] = counts.counts[b];
        rows.push_back(std::move(row));
    }
    j["counts"] = std::move(rows);
    return j.dump(2) + "\n";
}

CountData count_data_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("count data: malformed JSON: ") + e.what());
    }
    CountData counts;
    try {
        counts.scheme_name = j.at("scheme").get<std::string>();
        counts.visibility = j.value("visibility", 1.0);
        counts.dim = j.at("dim").get<Eigen::Index>();
        counts.model = count_model_from_string(j.at("model").get<std::string>());
        counts.seed = j.value("seed", std::uint64_t{0});
        counts.stream_id = j.value("stream_id", std::uint64_t{0});
        counts.n_total = j.at("n_total").get<std::int64_t>();
        for (const auto& row : j.at("counts")) {
            if (row.is_array()) {  // bare vector form
                counts.counts.push_back(row.get<std::vector<std::int64_t>>());
            } else {
                counts.counts.push_back(row.at("counts").get<std::vector<std::int64_t>>());
            }
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("count data: missing or bad field: ") + e.what());
    }
    for (const auto& row : counts.counts) {
        if (static_cast<Eigen::Index>(row.size()) != counts.dim) {
            throw std::runtime_error("count data: basis vector length differs from dim");
        }
        for (std::int64_t c : row) {
            if (c < 0) {
                throw std::runtime_error("count data: negative count");
            }
        }
    }
    return counts;
}

void save_count_data(const std::string& path, const CountData& counts,
                     const MeasurementScheme* scheme) {
    write_text_file(path, count_data_to_json(counts, scheme));
}

CountData load_count_data(const std::string& path) {
    return count_data_from_json(read_text_file(path));
}

std::string reconstruction_to_json(const ReconstructionResult& result) {
    json j;
    j["method"] = result.method == ReconstructionMethod::Mle ? "mle" : "linear-inversion";
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    j["log_likelihood"] = result.log_likelihood;
    j["rho"] = matrix_to_json(result.rho_hat.matrix());
    return j.dump(2) + "\n";
}

void save_reconstruction(const std::string& path, const ReconstructionResult& result) {
    write_text_file(path, reconstruction_to_json(result));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file '" + path + "'");
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write file '" + path + "'");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed while writing '" + path + "'");
    }
}

}  // namespace mubtomo
