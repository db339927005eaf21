#include <gtest/gtest.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <limits>

#include "swarmopt/error.hpp"
#include "swarmopt/message.hpp"
#include "swarmopt/random.hpp"

namespace swarmopt {
namespace {

double random_double(Rng& rng) {
  // Random bit patterns cover subnormals and extreme exponents; skip NaN and inf.
  for (;;) {
    const double x = std::bit_cast<double>(rng.engine()());
    if (std::isfinite(x)) return x;
  }
}

TEST(Message, EncodeShapes) {
  EXPECT_EQ(encode(Candidate{7, {1.0, 0.25}}), R"({"type":"candidate","trial_id":7,"coords":[1.0,0.25]})");
  EXPECT_EQ(encode(Shutdown{}), R"({"type":"shutdown"})");
  EXPECT_EQ(encode(Result{3, INFINITY, 0.5}), R"({"type":"result","trial_id":3,"value":"inf","duration_s":0.5})");
  EXPECT_EQ(encode(Hello{-1}), R"({"type":"hello","agent_id":-1})");
}

TEST(Message, FormatReal) {
  EXPECT_EQ(format_real(1.0), "1.0");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(-0.0), "-0.0");
  EXPECT_EQ(format_real(1e300), "1e+300");
  const auto tiny = format_real(std::numeric_limits<double>::denorm_min());
  double back = 0.0;
  std::from_chars(tiny.data(), tiny.data() + tiny.size(), back);
  EXPECT_EQ(back, std::numeric_limits<double>::denorm_min());
}

TEST(Message, RoundTripEdgeValues) {
  const std::vector<double> edge{0.0,
                                 -0.0,
                                 std::numeric_limits<double>::max(),
                                 std::numeric_limits<double>::lowest(),
                                 std::numeric_limits<double>::min(),
                                 std::numeric_limits<double>::denorm_min(),
                                 0.1 + 0.2,
                                 1.0 / 3.0};
  const Message c = Candidate{std::numeric_limits<std::uint64_t>::max(), edge};
  EXPECT_TRUE(bit_identical(decode(encode(c)), c));
  for (double v : edge) {
    const Message r = Result{1, v, v < 0 ? -v : v};
    EXPECT_TRUE(bit_identical(decode(encode(r)), r)) << encode(r);
  }
  const Message failed = Result{2, INFINITY, 1.0};
  EXPECT_TRUE(bit_identical(decode(encode(failed)), failed));
}

TEST(Message, RandomRoundTrips) {
  Rng rng(2718);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> coords(1 + rng.index(6));
    for (auto& c : coords) c = random_double(rng);
    const Message c = Candidate{rng.engine()(), coords};
    ASSERT_TRUE(bit_identical(decode(encode(c)), c)) << encode(c);
    const Message r = Result{rng.engine()(), random_double(rng), std::abs(random_double(rng))};
    ASSERT_TRUE(bit_identical(decode(encode(r)), r)) << encode(r);
  }
}

TEST(Message, BitIdenticalDistinguishesSignedZero) {
  EXPECT_FALSE(bit_identical(Result{1, 0.0, 0.0}, Result{1, -0.0, 0.0}));
  EXPECT_TRUE(bit_identical(Shutdown{}, Shutdown{}));
  EXPECT_FALSE(bit_identical(Shutdown{}, Hello{0}));
}

TEST(Message, DecodeRejectsMalformed) {
  for (const char* bad : {"", "not json", "[]", R"({"type":"nope"})", R"({"type":"candidate","trial_id":1})",
                          R"({"type":"candidate","trial_id":-1,"coords":[]})",
                          R"({"type":"candidate","trial_id":1.5,"coords":[]})",
                          R"({"type":"candidate","trial_id":1,"coords":["x"]})",
                          R"({"type":"result","trial_id":1,"value":"nan","duration_s":0})",
                          R"({"type":"hello","agent_id":"a"})"}) {
    try {
      decode(bad);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedMessage) << bad;
    }
  }
}

}  // namespace
}  // namespace swarmopt
