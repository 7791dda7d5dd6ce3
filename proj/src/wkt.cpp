#include "oppsim/geo.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace oppsim::geo {

WktParseError::WktParseError(const std::string& message, int line, int column)
    : std::runtime_error("wkt: line " + std::to_string(line) + ", col " +
                         std::to_string(column) + ": " + message),
      line(line),
      column(column) {}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) {
            advance();
        }
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw WktParseError(message, line, col);
    }

    void expect(char c) {
        skip_ws();
        if (eof() || peek() != c) {
            fail(eof() ? std::string("unexpected end of input, expected '") + c + "'"
                       : std::string("expected '") + c + "', got '" + peek() + "'");
        }
        advance();
    }

    std::string keyword() {
        skip_ws();
        std::string word;
        while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) {
            word.push_back(static_cast<char>(
                std::toupper(static_cast<unsigned char>(peek()))));
            advance();
        }
        if (word.empty()) {
            fail("expected geometry keyword");
        }
        return word;
    }

    double number() {
        skip_ws();
        if (eof()) {
            fail("unexpected end of input, expected coordinate");
        }
        const char* begin = text.data() + pos;
        const char* end = text.data() + text.size();
        double value = 0.0;
        auto [next, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || next == begin) {
            fail("non-numeric coordinate");
        }
        while (text.data() + pos != next) {
            advance();
        }
        return value;
    }

    Point coordinate() {
        const double x = number();
        const double y = number();
        return Point{x, y};
    }

    // "(x y, x y, ...)"
    std::vector<Point> coordinate_list() {
        expect('(');
        std::vector<Point> points;
        points.push_back(coordinate());
        while (true) {
            skip_ws();
            if (eof()) {
                fail("unbalanced parenthesis");
            }
            if (peek() == ',') {
                advance();
                points.push_back(coordinate());
            } else if (peek() == ')') {
                advance();
                return points;
            } else {
                fail(std::string("expected ',' or ')', got '") + peek() + "'");
            }
        }
    }
};

Polyline make_polyline(std::vector<Point> points, Cursor& cursor) {
    // Collapse consecutive duplicates so segment lengths stay positive.
    std::vector<Point> cleaned;
    for (const Point& p : points) {
        if (cleaned.empty() || !(cleaned.back() == p)) {
            cleaned.push_back(p);
        }
    }
    if (cleaned.size() < 2) {
        cursor.fail("degenerate linestring (fewer than two distinct points)");
    }
    return Polyline{std::move(cleaned)};
}

}  // namespace

WktData parse_wkt(const std::string& text) {
    WktData data;
    Cursor cursor{text};

    while (true) {
        cursor.skip_ws();
        if (cursor.eof()) {
            break;
        }
        const int kw_line = cursor.line;
        const int kw_col = cursor.col;
        const std::string kw = cursor.keyword();
        if (kw == "LINESTRING") {
            data.polylines.push_back(make_polyline(cursor.coordinate_list(), cursor));
        } else if (kw == "MULTILINESTRING") {
            cursor.expect('(');
            data.polylines.push_back(make_polyline(cursor.coordinate_list(), cursor));
            while (true) {
                cursor.skip_ws();
                if (cursor.eof()) {
                    cursor.fail("unbalanced parenthesis");
                }
                if (cursor.peek() == ',') {
                    cursor.advance();
                    data.polylines.push_back(
                        make_polyline(cursor.coordinate_list(), cursor));
                } else if (cursor.peek() == ')') {
                    cursor.advance();
                    break;
                } else {
                    cursor.fail(std::string("expected ',' or ')', got '") +
                                cursor.peek() + "'");
                }
            }
        } else if (kw == "POINT") {
            cursor.expect('(');
            data.points.push_back(cursor.coordinate());
            cursor.expect(')');
        } else {
            throw WktParseError("unsupported geometry keyword '" + kw + "'",
                                kw_line, kw_col);
        }
    }
    return data;
}

namespace {

void append_number(std::string& out, double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    out.append(buf, end);
}

void append_coords(std::string& out, const std::vector<Point>& points) {
    out.push_back('(');
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        append_number(out, points[i].x);
        out.push_back(' ');
        append_number(out, points[i].y);
    }
    out.push_back(')');
}

}  // namespace

std::string to_wkt(const WktData& data) {
    std::string out;
    for (const Polyline& line : data.polylines) {
        out += "LINESTRING ";
        append_coords(out, line.points);
        out.push_back('\n');
    }
    for (const Point& p : data.points) {
        out += "POINT (";
        append_number(out, p.x);
        out.push_back(' ');
        append_number(out, p.y);
        out += ")\n";
    }
    return out;
}

}  // namespace oppsim::geo
