#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace bookrank {

/// Calendar date (UTC, day precision). Thin value wrapper around
/// std::chrono::sys_days with ISO-8601 text conversion and month
/// arithmetic that clamps to the end of shorter months.
class Date {
public:
    Date() = default;

    static Date from_ymd(int year, unsigned month, unsigned day);
    static Date parse(std::string_view iso); // "YYYY-MM-DD", throws ParseError

    std::string to_string() const;

    Date add_days(int n) const;
    Date add_months(int n) const;

    int year() const;
    unsigned month() const;
    unsigned day() const;

    /// Days since 1970-01-01.
    int serial() const { return days_.time_since_epoch().count(); }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    explicit Date(std::chrono::sys_days d) : days_(d) {}
    std::chrono::sys_days days_{};
};

/// Whole months from a to b, rounded toward zero by calendar position.
int months_between(const Date& a, const Date& b);

} // namespace bookrank
