#include "alertgraph/time.hpp"

#include <cstdio>

namespace alertgraph {
namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[pos_]; }

    bool consume(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    std::optional<int> digits(std::size_t n) {
        if (pos_ + n > s_.size()) return std::nullopt;
        int value = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const char c = s_[pos_ + i];
            if (c < '0' || c > '9') return std::nullopt;
            value = value * 10 + (c - '0');
        }
        pos_ += n;
        return value;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::optional<Timestamp> parse_rfc3339(std::string_view text) {
    using namespace std::chrono;
    Cursor in(text);

    const auto y = in.digits(4);
    if (!y || !in.consume('-')) return std::nullopt;
    const auto mo = in.digits(2);
    if (!mo || !in.consume('-')) return std::nullopt;
    const auto d = in.digits(2);
    if (!d) return std::nullopt;
    if (!in.consume('T') && !in.consume('t') && !in.consume(' ')) return std::nullopt;
    const auto hh = in.digits(2);
    if (!hh || !in.consume(':')) return std::nullopt;
    const auto mm = in.digits(2);
    if (!mm || !in.consume(':')) return std::nullopt;
    const auto ss = in.digits(2);
    if (!ss) return std::nullopt;

    const year_month_day date{year{*y}, month{static_cast<unsigned>(*mo)},
                              day{static_cast<unsigned>(*d)}};
    // Leap seconds (ss == 60) are not representable in sys_time.
    if (!date.ok() || *hh > 23 || *mm > 59 || *ss > 59) return std::nullopt;

    std::int64_t frac_us = 0;
    if (in.consume('.')) {
        int n = 0;
        std::int64_t scale = 100000;
        while (in.peek() >= '0' && in.peek() <= '9') {
            if (n < 6) {
                frac_us += (in.peek() - '0') * scale;
                scale /= 10;
            }
            in.digits(1);
            ++n;
        }
        if (n == 0 || n > 9) return std::nullopt;
    }

    minutes offset{0};
    if (in.consume('Z') || in.consume('z')) {
        // UTC
    } else if (in.peek() == '+' || in.peek() == '-') {
        const int sign = in.peek() == '-' ? -1 : 1;
        in.consume(in.peek());
        const auto oh = in.digits(2);
        if (!oh) return std::nullopt;
        in.consume(':');
        const auto om = in.digits(2);
        if (!om || *oh > 23 || *om > 59) return std::nullopt;
        offset = minutes{sign * (*oh * 60 + *om)};
    }
    if (!in.done()) return std::nullopt;

    const auto local = sys_days{date} + hours{*hh} + minutes{*mm} + seconds{*ss} + microseconds{frac_us};
    return time_point_cast<Duration>(local - offset);
}

std::string format_rfc3339(Timestamp ts) {
    using namespace std::chrono;
    const auto day_start = floor<days>(ts);
    const year_month_day date{day_start};
    auto rest = ts - day_start;
    const auto h = duration_cast<hours>(rest);
    rest -= h;
    const auto m = duration_cast<minutes>(rest);
    rest -= m;
    const auto s = duration_cast<seconds>(rest);
    rest -= s;

    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%06lldZ", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                  static_cast<int>(h.count()), static_cast<int>(m.count()), static_cast<int>(s.count()),
                  static_cast<long long>(rest.count()));
    return buf;
}

}  // namespace alertgraph
