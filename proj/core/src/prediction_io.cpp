#include "lsys/prediction_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "lsys/image_io.hpp"

namespace lsys {

using nlohmann::json;

namespace {

PredictionRecord record_from(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
    PredictionRecord r;
    const auto& id = j.at("id");
    if (!id.is_number_integer() || id.get<long long>() < 0) throw std::invalid_argument("id must be a non-negative integer");
    r.id = id.get<std::size_t>();

    const auto& tokens = j.at("pred_tokens");
    if (!tokens.is_array()) throw std::invalid_argument("pred_tokens must be an array");
    for (const auto& t : tokens) {
        if (!t.is_number_integer()) throw std::invalid_argument("pred_tokens must hold integers");
        r.pred_tokens.push_back(t.get<int>());
    }

    const auto& terminated = j.at("terminated");
    if (!terminated.is_boolean()) throw std::invalid_argument("terminated must be a boolean");
    r.terminated = terminated.get<bool>();

    if (j.contains("logprobs") && !j["logprobs"].is_null()) {
        const auto& lps = j["logprobs"];
        if (!lps.is_array()) throw std::invalid_argument("logprobs must be an array or null");
        std::vector<double> values;
        values.reserve(lps.size());
        for (const auto& v : lps) {
            if (!v.is_number()) throw std::invalid_argument("logprobs must hold numbers");
            const double lp = v.get<double>();
            if (lp > 0.0) throw std::invalid_argument("log-probability " + std::to_string(lp) + " is positive");
            values.push_back(lp);
        }
        r.logprobs = std::move(values);
    }
    return r;
}

}  // namespace

PredictionFile read_predictions(std::istream& in) {
    PredictionFile file;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            file.records.push_back(record_from(json::parse(line)));
        } catch (const std::exception& e) {
            file.rejects.push_back({line_no, e.what()});
        }
    }
    return file;
}

PredictionFile load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    return read_predictions(in);
}

void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& records) {
    for (const auto& r : records) {
        json j = {{"id", r.id}, {"pred_tokens", r.pred_tokens}, {"terminated", r.terminated}};
        j["logprobs"] = r.logprobs ? json(*r.logprobs) : json(nullptr);
        out << j.dump() << '\n';
    }
}

}  // namespace lsys
