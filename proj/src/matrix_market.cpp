#include "markov_ml/matrix_market.hpp"

#include "markov_ml/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace markov_ml {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string &line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

template <class T>
T parse_number(std::istringstream &ss, std::size_t line_no, const char *what) {
    std::string tok;
    if (!(ss >> tok))
        throw ParseError(std::string("matrix_market: missing ") + what, line_no);
    T value{};
    const auto *first = tok.data();
    const auto *last = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError(std::string("matrix_market: bad ") + what + " '" + tok + "'", line_no);
    return value;
}

} // namespace

SparseMatrix read_matrix_market(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line))
        throw ParseError("matrix_market: empty input", 1);
    ++line_no;
    {
        std::istringstream ss(line);
        std::string banner, object, format, field, symmetry;
        ss >> banner >> object >> format >> field >> symmetry;
        if (banner != "%%MatrixMarket")
            throw ParseError("matrix_market: missing %%MatrixMarket banner", line_no);
        if (lower(object) != "matrix" || lower(format) != "coordinate" ||
            lower(field) != "real" || lower(symmetry) != "general")
            throw ParseError("matrix_market: only 'matrix coordinate real general' is supported",
                             line_no);
    }

    // Skip comments up to the size line.
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '%')
            continue;
        if (blank(line))
            continue;
        break;
    }
    if (!in && line.empty())
        throw ParseError("matrix_market: missing size line", line_no + 1);

    std::istringstream size_line(line);
    const auto rows = parse_number<long long>(size_line, line_no, "row count");
    const auto cols = parse_number<long long>(size_line, line_no, "column count");
    const auto entries = parse_number<long long>(size_line, line_no, "entry count");
    if (rows < 0 || cols < 0 || entries < 0)
        throw ParseError("matrix_market: negative size", line_no);

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(entries));
    while (static_cast<long long>(triplets.size()) < entries && std::getline(in, line)) {
        ++line_no;
        if (blank(line) || line[0] == '%')
            continue;
        std::istringstream ss(line);
        const auto i = parse_number<long long>(ss, line_no, "row index");
        const auto j = parse_number<long long>(ss, line_no, "column index");
        const auto v = parse_number<double>(ss, line_no, "value");
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError("matrix_market: index out of range", line_no);
        triplets.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), v});
    }
    if (static_cast<long long>(triplets.size()) != entries)
        throw ParseError("matrix_market: expected " + std::to_string(entries) + " entries, found " +
                             std::to_string(triplets.size()),
                         line_no);
    return SparseMatrix::from_triplets(static_cast<Index>(rows), static_cast<Index>(cols),
                                       std::move(triplets));
}

SparseMatrix read_matrix_market(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("matrix_market: cannot open " + path.string());
    return read_matrix_market(in);
}

void write_matrix_market(const SparseMatrix &m, std::ostream &out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    char buf[64];
    for (const auto &t : m.to_triplets()) {
        const auto res = std::to_chars(buf, buf + sizeof buf, t.value, std::chars_format::general, 17);
        out << (t.row + 1) << ' ' << (t.col + 1) << ' ' << std::string_view(buf, res.ptr - buf)
            << '\n';
    }
}

void write_matrix_market(const SparseMatrix &m, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("matrix_market: cannot open " + path.string() + " for writing");
    write_matrix_market(m, out);
    if (!out)
        throw InputError("matrix_market: write failed for " + path.string());
}

} // namespace markov_ml
