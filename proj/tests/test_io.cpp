#include <catch2/catch_amalgamated.hpp>
#include "uastl/uastl.hpp"
TEST_CASE("placeholder") { REQUIRE(true); }
