#include "miae/model_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "miae/error.hpp"
#include "miae/textio.hpp"

namespace miae {

namespace {

constexpr const char* kMagic = "miae-model v1";

std::vector<std::string> parameter_names(const MiaeConfig& config, bool with_fs) {
    std::vector<std::string> names;
    const std::size_t enc_layers = config.branch_hidden.size() + 1;
    for (std::size_t j = 0; j < config.branch_count(); ++j) {
        for (std::size_t l = 0; l < enc_layers; ++l) {
            const std::string base = "encoder." + std::to_string(j) + "." + std::to_string(l);
            names.push_back(base + ".W");
            names.push_back(base + ".b");
        }
    }
    if (with_fs) {
        names.emplace_back("fs.W");
        names.emplace_back("fs.b");
    }
    const std::size_t dec_layers = config.decoder_hidden.size() + 1 + (with_fs ? 1 : 0);
    for (std::size_t l = 0; l < dec_layers; ++l) {
        const std::string base = "decoder." + std::to_string(l);
        names.push_back(base + ".W");
        names.push_back(base + ".b");
    }
    return names;
}

void write_sizes(std::ostream& out, const char* key, const std::vector<std::size_t>& values) {
    out << key;
    for (std::size_t v : values) out << ' ' << v;
    out << '\n';
}

void write_matrix(std::ostream& out, const std::string& name, const Matrix& m) {
    out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << g17(m(i, j));
        }
        out << '\n';
    }
}

void write_config(std::ostream& out, const MiaeConfig& config) {
    out << "seed " << config.seed << '\n';
    write_sizes(out, "branch_dims", config.branch_dims);
    write_sizes(out, "branch_hidden", config.branch_hidden);
    out << "z_per_branch " << config.z_per_branch << '\n';
    write_sizes(out, "decoder_hidden", config.decoder_hidden);
}

void write_params(std::ostream& out, const std::vector<const Matrix*>& params,
                  const std::vector<std::string>& names) {
    out << "params " << params.size() << '\n';
    for (std::size_t i = 0; i < params.size(); ++i) write_matrix(out, names[i], *params[i]);
    out << "end\n";
}

class Reader {
public:
    explicit Reader(const std::filesystem::path& path) : in_(path), path_(path.string()) {
        if (!in_) throw IngestError("cannot open model file: " + path_);
    }

    std::string next_line() {
        std::string line;
        if (!std::getline(in_, line)) {
            throw IngestError("model file truncated: " + path_);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    // "key v1 v2 ..." -> values; the key must match.
    std::vector<std::string> keyed(const std::string& key) {
        std::istringstream ss(next_line());
        std::string got;
        ss >> got;
        if (got != key) {
            throw IngestError("model file: expected '" + key + "', got '" + got + "'");
        }
        std::vector<std::string> values;
        std::string token;
        while (ss >> token) values.push_back(token);
        return values;
    }

    std::vector<std::size_t> keyed_sizes(const std::string& key) {
        std::vector<std::size_t> out;
        for (const std::string& tok : keyed(key)) out.push_back(std::stoull(tok));
        return out;
    }

    std::size_t keyed_size(const std::string& key) {
        const auto values = keyed_sizes(key);
        if (values.size() != 1) throw IngestError("model file: '" + key + "' wants one value");
        return values[0];
    }

    double keyed_double(const std::string& key) {
        const auto values = keyed(key);
        if (values.size() != 1) throw IngestError("model file: '" + key + "' wants one value");
        const auto v = parse_double(values[0]);
        if (!v) throw IngestError("model file: bad number for '" + key + "'");
        return *v;
    }

    void read_matrix_into(const std::string& expected_name, Matrix& target) {
        const auto header = keyed("matrix");
        if (header.size() != 3) throw IngestError("model file: malformed matrix header");
        if (header[0] != expected_name) {
            throw IngestError("model file: expected matrix '" + expected_name + "', got '" +
                              header[0] + "'");
        }
        const std::size_t rows = std::stoull(header[1]);
        const std::size_t cols = std::stoull(header[2]);
        if (rows != target.rows() || cols != target.cols()) {
            throw IngestError("model file: matrix '" + header[0] + "' has shape " + header[1] +
                              "x" + header[2] + ", expected " + std::to_string(target.rows()) +
                              "x" + std::to_string(target.cols()));
        }
        for (std::size_t i = 0; i < rows; ++i) {
            std::istringstream ss(next_line());
            std::string token;
            for (std::size_t j = 0; j < cols; ++j) {
                if (!(ss >> token)) {
                    throw IngestError("model file: short row in matrix '" + header[0] + "'");
                }
                const auto v = parse_double(token);
                if (!v) throw IngestError("model file: bad value in matrix '" + header[0] + "'");
                target(i, j) = *v;
            }
        }
    }

private:
    std::ifstream in_;
    std::string path_;
};

}  // namespace

void save_model(const MiaeModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write model file: " + path.string());
    out << kMagic << '\n' << "kind miae\n";
    write_config(out, model.config);
    write_params(out, parameter_list(model), parameter_names(model.config, false));
}

void save_model(const MiaefsModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write model file: " + path.string());
    out << kMagic << '\n' << "kind miaefs\n";
    write_config(out, model.config);
    out << "alpha " << g17(model.alpha) << '\n';
    out << "bottleneck " << model.bottleneck_dim << '\n';
    write_params(out, parameter_list(model), parameter_names(model.config, true));
}

AnyModel load_model(const std::filesystem::path& path) {
    Reader reader(path);
    if (reader.next_line() != kMagic) {
        throw IngestError("not a model file (bad magic): " + path.string());
    }
    const auto kind = reader.keyed("kind");
    if (kind.size() != 1 || (kind[0] != "miae" && kind[0] != "miaefs")) {
        throw IngestError("model file: unknown kind");
    }
    const bool with_fs = kind[0] == "miaefs";

    MiaeConfig config;
    config.seed = reader.keyed_size("seed");
    config.branch_dims = reader.keyed_sizes("branch_dims");
    config.branch_hidden = reader.keyed_sizes("branch_hidden");
    config.z_per_branch = reader.keyed_size("z_per_branch");
    config.decoder_hidden = reader.keyed_sizes("decoder_hidden");

    double alpha = 0.0;
    std::size_t bottleneck = 0;
    if (with_fs) {
        alpha = reader.keyed_double("alpha");
        bottleneck = reader.keyed_size("bottleneck");
    }

    const std::vector<std::string> names = parameter_names(config, with_fs);
    const std::size_t n_params = reader.keyed_size("params");
    if (n_params != names.size()) {
        throw IngestError("model file: has " + std::to_string(n_params) +
                          " parameter matrices, architecture wants " +
                          std::to_string(names.size()));
    }

    if (with_fs) {
        MiaefsModel model = build_fs(config, alpha);
        if (model.bottleneck_dim != bottleneck) {
            throw IngestError("model file: bottleneck width disagrees with architecture");
        }
        auto params = parameter_list(model);
        for (std::size_t i = 0; i < params.size(); ++i) {
            reader.read_matrix_into(names[i], *params[i]);
        }
        if (reader.keyed("end").size() != 0) throw IngestError("model file: trailing tokens");
        return model;
    }

    MiaeModel model = build(config);
    auto params = parameter_list(model);
    for (std::size_t i = 0; i < params.size(); ++i) {
        reader.read_matrix_into(names[i], *params[i]);
    }
    if (reader.keyed("end").size() != 0) throw IngestError("model file: trailing tokens");
    return model;
}

}  // namespace miae
