#pragma once

// Internal strict line reader shared by the text document formats.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "lrlab/errors.hpp"
#include "lrlab/rational.hpp"

namespace lrlab::detail {

struct LineReader {
    std::istringstream in;
    explicit LineReader(const std::string& text) : in(text) {}

    std::string line() {
        std::string l;
        if (!std::getline(in, l)) throw usage_error("document truncated");
        return l;
    }

    static std::vector<long long> ints(const std::string& l) {
        std::istringstream ls(l);
        std::vector<long long> out;
        long long v;
        while (ls >> v) out.push_back(v);
        std::string rest;
        if (ls.clear(), ls >> rest) throw usage_error("non-integer token \"" + rest + "\"");
        return out;
    }

    // "key v1 v2 ..." -> integer values; the key must match exactly.
    std::vector<long long> keyed(const std::string& key, std::size_t count_min,
                                 std::size_t count_max) {
        const std::string rest = keyed_text(key);
        auto vals = ints(rest);
        if (vals.size() < count_min || vals.size() > count_max)
            throw usage_error("wrong number of values on \"" + key + "\" line");
        return vals;
    }

    // "key remainder" -> remainder string ("" when the line is just the key).
    std::string keyed_text(const std::string& key) {
        const std::string l = line();
        if (l.rfind(key, 0) != 0 || (l.size() > key.size() && l[key.size()] != ' '))
            throw usage_error("expected \"" + key + "\" line, got \"" + l + "\"");
        return l.size() > key.size() ? l.substr(key.size() + 1) : std::string();
    }

    Rational keyed_rational(const std::string& key) { return Rational::parse(keyed_text(key)); }

    void expect(const std::string& want) {
        const std::string l = line();
        if (l != want) throw usage_error("expected \"" + want + "\" line, got \"" + l + "\"");
    }
};

} // namespace lrlab::detail
