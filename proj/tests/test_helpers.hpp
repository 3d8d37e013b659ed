#pragma once

#include <string>

#include <doctest.h>

#include "announce/errors.hpp"
#include "announce/model.hpp"

// Checks both the exception type and the error-name prefix of what().
#define CHECK_FAILS_WITH(code_, ...)                                        \
  do {                                                                      \
    bool caught_ = false;                                                   \
    try {                                                                   \
      __VA_ARGS__;                                                          \
    } catch (const announce::Error& e_) {                                   \
      caught_ = true;                                                       \
      CHECK(e_.code() == (code_));                                          \
      CHECK(std::string(e_.what()).rfind(announce::errc_name(code_), 0) == 0); \
    }                                                                       \
    CHECK_MESSAGE(caught_, "expected " << announce::errc_name(code_));      \
  } while (0)

namespace testutil {

// Two agents, four states: a cannot tell the p-value apart inside each row,
// b cannot tell the q-value apart inside each column.
inline announce::Model two_bit_model() {
  return announce::Model({"w00", "w01", "w10", "w11"}, {"a", "b"},
                         {{"p", {"w10", "w11"}}, {"q", {"w01", "w11"}}},
                         {{"a", {{"w00", "w01"}, {"w10", "w11"}}},
                          {"b", {{"w00", "w10"}, {"w01", "w11"}}}});
}

inline announce::Model chain_model() {
  // Three states in a line: a merges the left pair, b merges the right pair.
  return announce::Model({"s0", "s1", "s2"}, {"a", "b"}, {{"p", {"s2"}}},
                         {{"a", {{"s0", "s1"}, {"s2"}}}, {"b", {{"s0"}, {"s1", "s2"}}}});
}

}  // namespace testutil
