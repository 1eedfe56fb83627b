#include "bookrank/date.hpp"

#include "bookrank/errors.hpp"

#include <cstdio>

namespace bookrank {

using namespace std::chrono;

Date Date::from_ymd(int y, unsigned m, unsigned d) {
    year_month_day ymd{year{y}, month{m}, day{d}};
    if (!ymd.ok()) {
        throw ParseError("invalid calendar date: " + std::to_string(y) + "-" +
                         std::to_string(m) + "-" + std::to_string(d));
    }
    return Date(sys_days{ymd});
}

Date Date::parse(std::string_view iso) {
    int y = 0;
    unsigned m = 0, d = 0;
    char dash1 = 0, dash2 = 0;
    const std::string s(iso);
    if (std::sscanf(s.c_str(), "%d%c%u%c%u", &y, &dash1, &m, &dash2, &d) != 5 ||
        dash1 != '-' || dash2 != '-') {
        throw ParseError("expected ISO-8601 date (YYYY-MM-DD), got '" + s + "'");
    }
    return from_ymd(y, m, d);
}

std::string Date::to_string() const {
    const year_month_day ymd{days_};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

Date Date::add_days(int n) const {
    return Date(days_ + days{n});
}

Date Date::add_months(int n) const {
    year_month_day ymd{days_};
    year_month_day shifted = ymd + months{n};
    if (!shifted.ok()) {
        shifted = shifted.year() / shifted.month() / last; // clamp to month end
    }
    return Date(sys_days{shifted});
}

int Date::year() const {
    return static_cast<int>(year_month_day{days_}.year());
}

unsigned Date::month() const {
    return static_cast<unsigned>(year_month_day{days_}.month());
}

unsigned Date::day() const {
    return static_cast<unsigned>(year_month_day{days_}.day());
}

int months_between(const Date& a, const Date& b) {
    const int whole = (b.year() - a.year()) * 12 + static_cast<int>(b.month()) - static_cast<int>(a.month());
    if (b >= a) {
        return (b.day() < a.day()) ? whole - 1 : whole;
    }
    return (b.day() > a.day()) ? whole + 1 : whole;
}

} // namespace bookrank
