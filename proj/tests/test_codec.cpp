#include <gtest/gtest.h>

#include <limits>
#include <string>

#include "adaptivemon/error.hpp"
#include "adaptivemon/peer/messages.hpp"
#include "adaptivemon/random.hpp"
#include "support/generators.hpp"

using namespace adaptivemon;
using namespace adaptivemon::peer;

namespace {

std::string decode_error_field(std::string_view line) {
  try {
    decode_message(line);
  } catch (const DecodeError& e) {
    return e.field();
  }
  ADD_FAILURE() << "no DecodeError for " << line;
  return {};
}

}  // namespace

TEST(Codec, MinimalBye) {
  EXPECT_EQ(decode_message("{\"type\":\"BYE\",\"node\":\"f1\"}\n"), Message(Bye{"f1"}));
  EXPECT_EQ(decode_message("{\"type\":\"bye\",\"node\":\"f1\"}\n"), Message(Bye{"f1"}));
}

TEST(Codec, EncodingShape) {
  const auto line = encode_message(Report{"f1", "cpu", 12.5, 0.25, 0.0625, 20});
  ASSERT_FALSE(line.empty());
  EXPECT_EQ(line.back(), '\n');
  EXPECT_EQ(line.find('\n'), line.size() - 1);
  for (auto key : {"\"type\":\"report\"", "\"node\":\"f1\"", "\"indicator\":\"cpu\"", "\"ts\":12.5", "\"mean\":0.25",
                   "\"var\":0.0625", "\"n\":20"}) {
    EXPECT_NE(line.find(key), std::string::npos) << key << " in " << line;
  }
  EXPECT_EQ(message_type(Gossip{}), "gossip");
}

TEST(Codec, MissingMeanNamesField) {
  EXPECT_EQ(decode_error_field(R"({"type":"report","node":"f","indicator":"cpu","ts":1,"var":0,"n":1})"
                               "\n"),
            "mean");
}

TEST(Codec, InvalidMessagesNameField) {
  EXPECT_EQ(decode_error_field("{\"type\":\"hello\",\"node\":\"f\"}\n"), "type");
  EXPECT_EQ(decode_error_field("{\"node\":\"f\"}\n"), "type");
  EXPECT_EQ(decode_error_field("{\"type\":\"register\",\"node\":\"f\",\"role\":\"boss\"}\n"), "role");
  EXPECT_EQ(decode_error_field(R"({"type":"report","node":"f","indicator":"cpu","ts":1,"mean":1,"var":-1,"n":1})"
                               "\n"),
            "var");
  EXPECT_EQ(decode_error_field(R"({"type":"report","node":"f","indicator":"cpu","ts":1,"mean":1,"var":0,"n":0})"
                               "\n"),
            "n");
  EXPECT_EQ(decode_error_field(R"({"type":"report","node":"f","indicator":"cpu","ts":1,"mean":1,"var":0,"n":1.5})"
                               "\n"),
            "n");
  EXPECT_EQ(decode_error_field(R"({"type":"report","node":"f","indicator":"cpu","ts":"x","mean":1,"var":0,"n":1})"
                               "\n"),
            "ts");
  EXPECT_EQ(decode_error_field("{\"type\":\"gossip\",\"node\":\"l\",\"entries\":[{\"origin\":\"f\"}]}\n"),
            "indicator");
}

TEST(Codec, TruncatedAndMalformed) {
  EXPECT_THROW(decode_message("{\"type\":\"bye\",\"node\":\"f1\"}"), DecodeError);
  EXPECT_THROW(decode_message("{\"type\":\"bye\",\"no"), DecodeError);
  EXPECT_THROW(decode_message("{\"type\":\"bye\",\"node\":\"a\"}\n{\"type\":\"bye\",\"node\":\"b\"}\n"), DecodeError);
  EXPECT_THROW(decode_message("[1,2]\n"), DecodeError);
  EXPECT_THROW(decode_message("\n"), DecodeError);
}

TEST(Codec, NonFiniteRejectedOnEncode) {
  EXPECT_THROW(encode_message(Report{"f", "cpu", 0, std::numeric_limits<double>::quiet_NaN(), 0, 1}), Error);
  EXPECT_THROW(encode_message(Report{"f", "cpu", std::numeric_limits<double>::infinity(), 0, 0, 1}), Error);
}

// Property: decode(encode(m)) == m over a seeded corpus.
TEST(CodecProperty, RoundTripCorpus) {
  Rng rng(99);
  std::size_t count = 0;
  for (int i = 0; i < 12000; ++i) {
    const auto m = gen::message(rng);
    const auto line = encode_message(m);
    ASSERT_EQ(line.find('\n'), line.size() - 1);
    ASSERT_EQ(decode_message(line), m) << line;
    ++count;
  }
  EXPECT_GE(count, 10000u);
}

TEST(LineFramer, SplitsArbitraryChunks) {
  Rng rng(5);
  std::string stream;
  std::vector<Message> sent;
  for (int i = 0; i < 300; ++i) {
    sent.push_back(gen::message(rng));
    stream += encode_message(sent.back());
  }
  LineFramer framer;
  std::vector<Message> got;
  std::size_t pos = 0;
  while (pos < stream.size()) {
    const std::size_t n = std::min(stream.size() - pos, 1 + rng.index(97));
    framer.feed(std::string_view(stream).substr(pos, n));
    pos += n;
    while (auto line = framer.next()) got.push_back(decode_message(*line));
  }
  EXPECT_EQ(got, sent);
  EXPECT_EQ(framer.buffered(), 0u);
}

TEST(LineFramer, PartialLineAndLimit) {
  LineFramer framer(16);
  framer.feed("{\"type\"");
  EXPECT_FALSE(framer.next());
  EXPECT_EQ(framer.buffered(), 7u);
  framer.feed(std::string(20, 'x'));
  EXPECT_THROW(framer.next(), DecodeError);
}
