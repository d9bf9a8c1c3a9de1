#include "miae/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <string>
#include <unordered_map>

#include "miae/error.hpp"
#include "miae/textio.hpp"

namespace miae {

int TabularDataset::class_index(const std::string& name) const {
    const auto it = std::find(class_names.begin(), class_names.end(), name);
    return it == class_names.end() ? -1 : static_cast<int>(it - class_names.begin());
}

std::size_t BranchPartition::total_width() const {
    std::size_t total = 0;
    for (std::size_t w : widths) total += w;
    return total;
}

std::size_t BranchPartition::offset(std::size_t branch) const {
    std::size_t off = 0;
    for (std::size_t j = 0; j < branch; ++j) off += widths[j];
    return off;
}

BranchView BranchView::take_rows(const std::vector<std::size_t>& indices) const {
    BranchView out;
    out.branches.reserve(branches.size());
    for (const Matrix& b : branches) out.branches.push_back(b.gather_rows(indices));
    return out;
}

TabularDataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open CSV file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw IngestError("empty CSV file: " + path.string());
    const std::vector<std::string> header = split_csv_line(line);

    std::size_t label_pos = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == label_column) {
            label_pos = i;
            break;
        }
    }
    if (label_pos == header.size()) {
        throw IngestError("label column '" + label_column + "' not found in " + path.string());
    }

    TabularDataset ds;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != label_pos) ds.feature_names.push_back(header[i]);
    }

    std::unordered_map<std::string, int> class_index;
    std::vector<double> values;
    std::size_t n_rows = 0;
    std::size_t row_number = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw IngestError("row " + std::to_string(row_number) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(header.size()));
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == label_pos) continue;
            const auto v = parse_double(fields[i]);
            if (!v) {
                throw IngestError("non-numeric cell at row " + std::to_string(row_number) +
                                  ", column '" + header[i] + "': '" + fields[i] + "'");
            }
            values.push_back(*v);
        }
        const std::string& label = fields[label_pos];
        auto [it, inserted] = class_index.try_emplace(label, static_cast<int>(ds.class_names.size()));
        if (inserted) ds.class_names.push_back(label);
        ds.labels.push_back(it->second);
        ++n_rows;
    }
    if (n_rows == 0) throw IngestError("CSV file has a header but no data rows: " + path.string());

    ds.features = Matrix(n_rows, ds.feature_names.size(), std::move(values));
    return ds;
}

void save_csv(const TabularDataset& ds, const std::filesystem::path& path,
              const std::string& label_column) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write CSV file: " + path.string());
    for (const std::string& name : ds.feature_names) out << name << ',';
    out << label_column << '\n';
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        for (std::size_t j = 0; j < ds.n_features(); ++j) out << g17(ds.features(i, j)) << ',';
        out << ds.class_names[static_cast<std::size_t>(ds.labels[i])] << '\n';
    }
}

NormalizationStats fit_minmax(const TabularDataset& train) {
    if (train.n_samples() == 0) throw DimensionError("fit_minmax: empty dataset");
    NormalizationStats stats;
    stats.min.assign(train.n_features(), 0.0);
    stats.max.assign(train.n_features(), 0.0);
    for (std::size_t j = 0; j < train.n_features(); ++j) {
        double lo = train.features(0, j), hi = train.features(0, j);
        for (std::size_t i = 1; i < train.n_samples(); ++i) {
            lo = std::min(lo, train.features(i, j));
            hi = std::max(hi, train.features(i, j));
        }
        stats.min[j] = lo;
        stats.max[j] = hi;
    }
    return stats;
}

TabularDataset apply_minmax(const TabularDataset& ds, const NormalizationStats& stats) {
    if (ds.n_features() != stats.min.size()) {
        throw DimensionError("apply_minmax: dataset width " + std::to_string(ds.n_features()) +
                             " does not match stats width " + std::to_string(stats.min.size()));
    }
    TabularDataset out = ds;
    for (std::size_t j = 0; j < out.n_features(); ++j) {
        const double lo = stats.min[j];
        const double range = stats.max[j] - lo;
        for (std::size_t i = 0; i < out.n_samples(); ++i) {
            double v = range > 0.0 ? (out.features(i, j) - lo) / range : 0.0;
            out.features(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

BranchPartition partition_widths(std::vector<std::size_t> widths, std::size_t total) {
    if (widths.empty()) throw ConfigError("partition: no branch widths given");
    std::size_t sum = 0;
    for (std::size_t w : widths) {
        if (w == 0) throw ConfigError("partition: zero-width branch");
        sum += w;
    }
    if (sum != total) {
        throw ConfigError("partition widths sum to " + std::to_string(sum) + ", dataset has " +
                          std::to_string(total) + " columns");
    }
    return BranchPartition{std::move(widths)};
}

BranchPartition partition_equal(std::size_t n, std::size_t total) {
    if (n == 0 || n > total) {
        throw ConfigError("partition: branch count " + std::to_string(n) +
                          " must be in [1, " + std::to_string(total) + "]");
    }
    const std::size_t base = total / n;
    const std::size_t extra = total % n;
    std::vector<std::size_t> widths(n, base);
    for (std::size_t j = 0; j < extra; ++j) widths[j] += 1;
    return BranchPartition{std::move(widths)};
}

BranchView split_features(const Matrix& features, const BranchPartition& partition) {
    if (partition.total_width() != features.cols()) {
        throw DimensionError("split_features: partition covers " +
                             std::to_string(partition.total_width()) + " columns, matrix has " +
                             std::to_string(features.cols()));
    }
    BranchView view;
    std::size_t offset = 0;
    for (std::size_t w : partition.widths) {
        Matrix part(features.rows(), w);
        for (std::size_t i = 0; i < features.rows(); ++i) {
            std::copy(features.row(i) + offset, features.row(i) + offset + w, part.row(i));
        }
        view.branches.push_back(std::move(part));
        offset += w;
    }
    return view;
}

}  // namespace miae
