#pragma once

#include "doctest.h"

#include "hypergiant/combinat.hpp"

namespace doctest {

template <>
struct StringMaker<unsigned __int128> {
    static String convert(unsigned __int128 value) { return hypergiant::to_string(value).c_str(); }
};

template <>
struct StringMaker<hypergiant::VertexSet> {
    static String convert(const hypergiant::VertexSet& value) { return hypergiant::to_string(value).c_str(); }
};

}  // namespace doctest
