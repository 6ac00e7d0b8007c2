// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include <string>

#include "doctest.h"
#include "mwpgen/checkpoint.hpp"
#include "mwpgen/error.hpp"
#include "support.hpp"

using namespace mwpgen;

namespace {

ModelCheckpoint sample_checkpoint(TokenMode mode = TokenMode::character) {
  ModelCheckpoint c;
  c.vocabulary = mode == TokenMode::character
                     ? Vocabulary(mode, {"\n", " ", "a", "ක"})
                     : Vocabulary(mode, {"\n", "how", "many", "<unk>"});
  c.window_length = 6;
  c.params = init_model(4, 5, 2, 99);
  c.metadata = {17, 0.123456789, 0xDEADBEEFCAFEull};
  return c;
}

std::string message_of(std::string_view bytes) {
  try {
    deserialize_checkpoint(bytes);
  } catch (const FormatError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("checkpoint") {
  TEST_CASE("round trip is bit-identical") {
    for (auto mode : {TokenMode::character, TokenMode::word}) {
      const ModelCheckpoint c = sample_checkpoint(mode);
      const std::string bytes = serialize_checkpoint(c);
      const ModelCheckpoint back = deserialize_checkpoint(bytes);
      CHECK(back.params == c.params);
      CHECK(back.vocabulary == c.vocabulary);
      CHECK(back.window_length == 6);
      CHECK(back.metadata.epochs_run == 17);
      CHECK(back.metadata.final_loss == 0.123456789);
      CHECK(back.metadata.rng_seed == 0xDEADBEEFCAFEull);
      CHECK(serialize_checkpoint(back) == bytes);
    }
  }

  TEST_CASE("file save and load") {
    const auto dir = testing_support::scratch_dir("checkpoint_file");
    const ModelCheckpoint c = sample_checkpoint();
    save_checkpoint(c, dir / "m.mwpf");
    const ModelCheckpoint back = load_checkpoint(dir / "m.mwpf");
    CHECK(back.params == c.params);
    save_checkpoint(back, dir / "m2.mwpf");
    CHECK(testing_support::slurp(dir / "m.mwpf") == testing_support::slurp(dir / "m2.mwpf"));
    CHECK_THROWS_AS(load_checkpoint(dir / "absent.mwpf"), ValidationError);
  }

  TEST_CASE("header layout") {
    const std::string bytes = serialize_checkpoint(sample_checkpoint());
    CHECK(bytes.substr(0, 4) == "MWPF");
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0);
    CHECK(bytes[8] == 0);  // character mode
  }

  TEST_CASE("truncation names the block") {
    const std::string bytes = serialize_checkpoint(sample_checkpoint());
    CHECK(message_of(bytes.substr(0, bytes.size() - 1)).find("block 'weights: output bias'") != std::string::npos);
    CHECK(message_of(bytes.substr(0, 10)).find("block 'header'") != std::string::npos);
    CHECK(message_of(bytes.substr(0, 40)).find("block 'vocabulary'") != std::string::npos);
    // Every strict prefix is rejected.
    for (std::size_t n = 0; n < bytes.size(); n += 97) CHECK_FALSE(message_of(bytes.substr(0, n)).empty());
  }

  TEST_CASE("corrupt header, version and trailing bytes") {
    std::string bytes = serialize_checkpoint(sample_checkpoint());
    std::string bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK(message_of(bad_magic).find("magic") != std::string::npos);
    std::string bad_version = bytes;
    bad_version[4] = 2;
    CHECK(message_of(bad_version).find("version 2") != std::string::npos);
    CHECK(message_of(bytes + "x").find("trailer") != std::string::npos);
  }
}
