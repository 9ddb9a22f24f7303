#include <sstream>

#include <gtest/gtest.h>

#include "lsys/image_io.hpp"
#include "lsys/prediction_io.hpp"

using namespace lsys;

TEST(PredictionIo, ReadsSchema) {
    std::istringstream in(
        R"({"id": 3, "pred_tokens": [0, 2, 5, 3, 6, 2, 1], "logprobs": [-0.1, -0.2, 0.0], "terminated": true})"
        "\n\n"
        R"({"id": 4, "pred_tokens": [0, 2, 2], "logprobs": null, "terminated": false})"
        "\n"
        R"({"id": 5, "pred_tokens": [], "terminated": true})"
        "\r\n");
    const auto file = read_predictions(in);
    ASSERT_TRUE(file.rejects.empty()) << file.rejects[0].reason;
    ASSERT_EQ(file.records.size(), 3u);
    EXPECT_EQ(file.records[0].id, 3u);
    EXPECT_EQ(file.records[0].pred_tokens, (std::vector<int>{0, 2, 5, 3, 6, 2, 1}));
    ASSERT_TRUE(file.records[0].logprobs.has_value());
    EXPECT_EQ(file.records[0].logprobs->size(), 3u);
    EXPECT_TRUE(file.records[0].terminated);
    EXPECT_FALSE(file.records[1].logprobs.has_value());
    EXPECT_FALSE(file.records[1].terminated);
    EXPECT_FALSE(file.records[2].logprobs.has_value());
}

TEST(PredictionIo, RejectsBadLinesWithLineNumbers) {
    std::istringstream in(
        "not json\n"
        R"({"pred_tokens": [2], "terminated": true})" "\n"
        R"({"id": -1, "pred_tokens": [2], "terminated": true})" "\n"
        R"({"id": 1, "pred_tokens": [2.5], "terminated": true})" "\n"
        R"({"id": 1, "pred_tokens": [2], "terminated": "yes"})" "\n"
        R"({"id": 1, "pred_tokens": [2], "logprobs": [0.5], "terminated": true})" "\n"
        R"({"id": 1, "pred_tokens": [2], "logprobs": "none", "terminated": true})" "\n"
        R"({"id": 1, "pred_tokens": "F", "terminated": true})" "\n"
        R"({"id": 7, "pred_tokens": [2, 1], "terminated": true})" "\n");
    const auto file = read_predictions(in);
    ASSERT_EQ(file.records.size(), 1u);
    EXPECT_EQ(file.records[0].id, 7u);
    ASSERT_EQ(file.rejects.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(file.rejects[i].line, i + 1);
    EXPECT_NE(file.rejects[5].reason.find("positive"), std::string::npos);
}

TEST(PredictionIo, RoundTrip) {
    std::vector<PredictionRecord> records(2);
    records[0].id = 1;
    records[0].pred_tokens = {0, 2, 1};
    records[0].logprobs = std::vector<double>{-0.25, -1.5};
    records[1].id = 2;
    records[1].pred_tokens = {0, 2, 2, 2};
    records[1].terminated = false;
    std::ostringstream out;
    write_predictions(out, records);
    std::istringstream in(out.str());
    const auto back = read_predictions(in);
    ASSERT_TRUE(back.rejects.empty());
    ASSERT_EQ(back.records.size(), 2u);
    EXPECT_EQ(back.records[0].pred_tokens, records[0].pred_tokens);
    EXPECT_EQ(*back.records[0].logprobs, *records[0].logprobs);
    EXPECT_FALSE(back.records[1].logprobs.has_value());
    EXPECT_FALSE(back.records[1].terminated);
}

TEST(PredictionIo, MissingFile) {
    EXPECT_THROW(load_predictions("/nonexistent/predictions.jsonl"), IoError);
}
