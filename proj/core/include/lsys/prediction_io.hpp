#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lsys/eval.hpp"

namespace lsys {

/// A line of a predictions file that failed the schema.
struct PredictionReject {
    std::size_t line = 0;
    std::string reason;
};

struct PredictionFile {
    std::vector<PredictionRecord> records;
    std::vector<PredictionReject> rejects;
};

/// Reads JSON Lines records
///   {"id": int, "pred_tokens": [int], "logprobs": [float] | null, "terminated": bool}
/// "logprobs" may be omitted. Malformed lines are collected as rejects.
PredictionFile read_predictions(std::istream& in);
PredictionFile load_predictions(const std::filesystem::path& path);

void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& records);

}  // namespace lsys
