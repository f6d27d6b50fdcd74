#ifndef QOMP_TEST_SUPPORT_HPP
#define QOMP_TEST_SUPPORT_HPP

#include <initializer_list>

#include <qomp/arith.hpp>

namespace qomp::test
{

inline RatVec rv(std::initializer_list<const char *> xs)
{
    RatVec v;
    for (auto x : xs) {
        v.push_back(parse_rat(x));
    }
    return v;
}

inline IntVec iv(std::initializer_list<long> xs)
{
    IntVec v;
    for (auto x : xs) {
        v.emplace_back(x);
    }
    return v;
}

} // namespace qomp::test

#endif
