// Line-oriented text format for series:
//   ring=<tag> val=<v> trunc=<T|inf>
//   <coefficient>          (one per line, canonical form per ring)
// Round-trips are bit-exact.
#pragma once

#include "quasirank/qseries.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace quasirank {

template <class R>
void write_series(std::ostream& os, const QSeries<R>& s) {
    os << "ring=" << s.ring.tag() << " val=" << s.val << " trunc=";
    if (s.trunc >= kInfTrunc)
        os << "inf";
    else
        os << s.trunc;
    os << '\n';
    for (const auto& v : s.c) os << s.ring.to_string(v) << '\n';
}

template <class R>
std::string series_to_text(const QSeries<R>& s) {
    std::ostringstream os;
    write_series(os, s);
    return os.str();
}

template <class R>
QSeries<R> read_series(std::istream& is, const R& ring) {
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("series text: missing header");
    auto field = [&](const std::string& key) {
        auto pos = header.find(key + "=");
        if (pos == std::string::npos)
            throw std::invalid_argument("series text: missing field " + key);
        pos += key.size() + 1;
        auto end = header.find(' ', pos);
        return header.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    };
    if (field("ring") != ring.tag())
        throw std::invalid_argument("series text: ring tag mismatch (got " + field("ring") +
                                    ", expected " + ring.tag() + ")");
    QSeries<R> s(ring);
    s.val = std::stoll(field("val"));
    std::string t = field("trunc");
    s.trunc = (t == "inf") ? kInfTrunc : std::stoll(t);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        s.c.push_back(ring.parse(line));
    }
    s.normalize();
    return s;
}

template <class R>
QSeries<R> series_from_text(const std::string& text, const R& ring) {
    std::istringstream is(text);
    return read_series(is, ring);
}

}  // namespace quasirank
