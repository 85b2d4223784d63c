#include "basmajian/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace basmajian {

namespace {

nlohmann::json cx(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex cx_from(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

double parse_real(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not a number: " + std::string(s));
    return v;
}

}  // namespace

nlohmann::json matrix_to_json(const MoebiusMap& m) {
    return nlohmann::json::array({nlohmann::json::array({cx(m.a()), cx(m.b())}),
                                  nlohmann::json::array({cx(m.c()), cx(m.d())})});
}

MoebiusMap matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
        throw std::invalid_argument("matrix must be 2x2");
    Complex a = cx_from(j[0][0]), b = cx_from(j[0][1]), c = cx_from(j[1][0]), d = cx_from(j[1][1]);
    // Already normalized matrices are kept bit for bit.
    double scale = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
    if (std::abs(a * d - b * c - 1.0) < 64 * 2.2e-16 * scale) return MoebiusMap::unchecked(a, b, c, d);
    return MoebiusMap(a, b, c, d);
}

Complex parse_complex(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    double imv;
    if (im.empty() || im == "+") imv = 1.0;
    else if (im == "-") imv = -1.0;
    else imv = parse_real(im);
    return {re.empty() ? 0.0 : parse_real(re), imv};
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
    std::string im = format_double(z.imag());
    if (im.front() != '-') im = "+" + im;
    return format_double(z.real()) + im + "i";
}

}  // namespace basmajian
