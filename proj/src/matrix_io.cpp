#include "tensorlog/matrix_io.hpp"

#include "tensorlog/error.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace tensorlog {

namespace {

std::vector<std::string_view> lines_of(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        out.push_back(line);
        start = end + 1;
    }
    return out;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

AdjMatrix read_csv_matrix(std::string_view text)
{
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 0;
    for (std::string_view line : lines_of(text)) {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        std::vector<double> row;
        std::size_t col = 1;
        std::size_t start = 0;
        for (;;) {
            std::size_t comma = line.find(',', start);
            std::string_view cell = trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
            if (cell == "0")
                row.push_back(0.0);
            else if (cell == "1")
                row.push_back(1.0);
            else
                throw SyntaxError("expected 0 or 1, got '" + std::string(cell) + "'", lineno, col);
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
            col = start + 1;
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0)
        throw SyntaxError("empty matrix", 1, 1);
    AdjMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw SyntaxError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size())
                                  + " entries, expected " + std::to_string(n),
                              i + 1, 1);
        for (std::size_t j = 0; j < n; ++j)
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return r;
}

std::string write_csv_matrix(const AdjMatrix& r)
{
    std::string out;
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
            if (j)
                out += ',';
            out += r(i, j) != 0.0 ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

AdjMatrix read_edge_list(std::string_view text, std::optional<std::size_t> n)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t max_index = 0;
    std::size_t lineno = 0;
    for (std::string_view line : lines_of(text)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#' || line.front() == '%')
            continue;
        std::size_t vals[2];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int k = 0; k < 2; ++k) {
            while (p < end && std::isspace(static_cast<unsigned char>(*p)))
                ++p;
            auto [next, ec] = std::from_chars(p, end, vals[k]);
            if (ec != std::errc() || vals[k] == 0)
                throw SyntaxError("expected a positive node index", lineno, static_cast<std::size_t>(p - line.data()) + 1);
            p = next;
        }
        while (p < end && std::isspace(static_cast<unsigned char>(*p)))
            ++p;
        if (p != end)
            throw SyntaxError("trailing characters after edge", lineno, static_cast<std::size_t>(p - line.data()) + 1);
        edges.emplace_back(vals[0], vals[1]);
        max_index = std::max({max_index, vals[0], vals[1]});
    }
    const std::size_t dim = n.value_or(max_index);
    if (dim == 0)
        throw ModelError("edge list is empty and no dimension was given");
    if (max_index > dim)
        throw ModelError("edge index " + std::to_string(max_index) + " exceeds dimension " + std::to_string(dim));
    AdjMatrix r = AdjMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (auto [i, j] : edges)
        r(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = 1.0;
    return r;
}

std::string write_edge_list(const AdjMatrix& r)
{
    std::ostringstream os;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j)
            if (r(i, j) != 0.0)
                os << (i + 1) << ' ' << (j + 1) << '\n';
    return os.str();
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << content;
}

} // namespace tensorlog
