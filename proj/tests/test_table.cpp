#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "puocs/table.hpp"

using namespace puocs;

TEST_CASE("format_number")
{
    CHECK(format_number(0.25, 12) == "0.25");
    CHECK(format_number(1.0 / 3.0, 6) == "0.333333");
    CHECK(format_number(NAN, 12) == "nan");
    CHECK(format_number(-INFINITY, 12) == "-inf");
}

TEST_CASE("csv layout")
{
    Table t({"name", "value", "count"});
    t.add_row({std::string("a,b"), 1.5, 3L});
    std::ostringstream out;
    t.write(out, OutputFormat::csv, 12);
    CHECK(out.str() == "name,value,count\n\"a,b\",1.5,3\n");
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("json lines keep key order and map nonfinite to null")
{
    Table t({"z", "a", "m"});
    t.add_row({std::string("x"), NAN, 2.5});
    std::ostringstream out;
    t.write(out, OutputFormat::json, 12);
    const auto doc = nlohmann::ordered_json::parse(out.str());
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc.items()) {
        keys.push_back(k);
    }
    CHECK(keys == std::vector<std::string>{"z", "a", "m"});
    CHECK(doc["a"].is_null());
    CHECK(doc["m"].get<double>() == 2.5);
}

TEST_CASE("property: numbers round-trip through the declared precision")
{
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> mantissa(-10.0, 10.0);
    std::uniform_int_distribution<int> exponent(-30, 30);
    for (int precision = 6; precision <= 17; ++precision) {
        for (int trial = 0; trial < 200; ++trial) {
            const double v = mantissa(rng) * std::pow(10.0, exponent(rng));
            const double back = std::stod(format_number(v, precision));
            CHECK(std::abs(back - v) <= 0.5 * std::pow(10.0, 1 - precision) * std::abs(v) * 1.0000001);
            if (precision == 17) {
                CHECK(back == v);
            }
        }
    }
}
