#pragma once

#include <filesystem>
#include <variant>

#include "miae/miae.hpp"
#include "miae/miaefs.hpp"

namespace miae {

// Versioned structured-text model files. Values are written with 17
// significant digits, so load(save(m)) reproduces every parameter, and
// therefore every encoding, bit-exactly.
void save_model(const MiaeModel& model, const std::filesystem::path& path);
void save_model(const MiaefsModel& model, const std::filesystem::path& path);

using AnyModel = std::variant<MiaeModel, MiaefsModel>;
AnyModel load_model(const std::filesystem::path& path);

}  // namespace miae
