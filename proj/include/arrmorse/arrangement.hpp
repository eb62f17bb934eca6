#pragma once

#include <arrmorse/linalg.hpp>
#include <arrmorse/rational.hpp>

#include <algorithm>
#include <cctype>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace arrmorse {

struct parse_error : input_error {
    int line = 0;
    int col = 0;
    parse_error(int line_, int col_, const std::string& msg)
        : input_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                      ": " + msg),
          line(line_), col(col_) {}
};

// Univariate polynomial in the family parameter t, degree capped at 4.
// Coefficient entries of a linear form are these; parameter-free input
// just leaves them constant.
class ParamPoly {
  public:
    static constexpr int max_degree = 4;

    ParamPoly() = default;
    explicit ParamPoly(const Rat& constant) {
        if (constant != 0) coeffs_.push_back(constant);
    }

    void add_term(const Rat& coeff, int power) {
        if (static_cast<int>(coeffs_.size()) <= power) coeffs_.resize(power + 1, Rat(0));
        coeffs_[power] += coeff;
        trim();
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    int degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.size()) - 1; }

    Rat constant_value() const { return coeffs_.empty() ? Rat(0) : coeffs_[0]; }

    Rat evaluate(const Rat& t) const {
        Rat acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    const std::vector<Rat>& coefficients() const { return coeffs_; }

    bool operator==(const ParamPoly&) const = default;

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rat> coeffs_; // coeffs_[k] multiplies t^k
};

struct LinearForm {
    std::vector<ParamPoly> coeffs; // one entry per variable

    bool is_param_free() const {
        return std::all_of(coeffs.begin(), coeffs.end(),
                           [](const ParamPoly& p) { return p.is_constant(); });
    }

    bool is_zero() const {
        return std::all_of(coeffs.begin(), coeffs.end(),
                           [](const ParamPoly& p) { return p.is_zero(); });
    }

    // Constant forms viewed as rational vectors.
    RatVec constant_vector() const {
        RatVec v;
        v.reserve(coeffs.size());
        for (const auto& c : coeffs) v.push_back(c.constant_value());
        return v;
    }

    RatVec evaluate(const Rat& t) const {
        RatVec v;
        v.reserve(coeffs.size());
        for (const auto& c : coeffs) v.push_back(c.evaluate(t));
        return v;
    }
};

class Arrangement {
  public:
    int dim = 0;                            // ambient dimension (number of variables)
    std::vector<LinearForm> forms;          // order as given in the input
    std::vector<std::string> var_names;
    std::optional<std::string> param_name;

    int size() const { return static_cast<int>(forms.size()); }

    bool is_parametric() const { return param_name.has_value(); }

    bool is_param_free() const {
        return std::all_of(forms.begin(), forms.end(),
                           [](const LinearForm& f) { return f.is_param_free(); });
    }

    // Coefficient rows of a parameter-free arrangement.
    RatMat rows() const {
        RatMat m;
        m.reserve(forms.size());
        for (const auto& f : forms) m.push_back(f.constant_vector());
        return m;
    }

    // Instantiates the family at a rational parameter value. The lattice can
    // jump at special values, so every evaluation re-checks degeneracy.
    Arrangement evaluate_at(const Rat& t) const {
        Arrangement out;
        out.dim = dim;
        out.var_names = var_names;
        for (std::size_t i = 0; i < forms.size(); ++i) {
            RatVec v = forms[i].evaluate(t);
            if (is_zero_vec(v))
                throw input_error("form " + std::to_string(i) + " degenerates at t=" +
                                  format_rat(t));
            LinearForm f;
            for (const auto& x : v) f.coeffs.emplace_back(x);
            out.forms.push_back(std::move(f));
        }
        for (std::size_t i = 0; i < out.forms.size(); ++i)
            for (std::size_t j = i + 1; j < out.forms.size(); ++j)
                if (proportional(out.forms[i].constant_vector(), out.forms[j].constant_vector()))
                    throw input_error("forms " + std::to_string(i) + " and " + std::to_string(j) +
                                      " become proportional at t=" + format_rat(t));
        return out;
    }

    // True when the forms span the whole space; non-essential arrangements
    // are legal input and are only flagged in reports.
    bool essential() const { return rank(rows()) == dim; }
};

namespace detail {

class FormScanner {
  public:
    FormScanner(std::string text, int line) : text_(std::move(text)), line_(line) {
        // U+2212 (minus sign) is accepted alongside ASCII '-'; padding keeps
        // byte offsets equal to reported columns.
        for (std::size_t i = 0; i + 2 < text_.size(); ++i)
            if (static_cast<unsigned char>(text_[i]) == 0xE2 &&
                static_cast<unsigned char>(text_[i + 1]) == 0x88 &&
                static_cast<unsigned char>(text_[i + 2]) == 0x92) {
                text_[i] = '-';
                text_[i + 1] = ' ';
                text_[i + 2] = ' ';
            }
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void advance() { ++pos_; }

    int column() const { return static_cast<int>(pos_) + 1; }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(line_, column(), msg); }

    bool try_consume(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    std::optional<std::string> try_identifier() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
            return std::nullopt;
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::optional<Int> try_integer() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            return std::nullopt;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Int(text_.substr(start, pos_ - start));
    }

  private:
    std::string text_;
    std::size_t pos_ = 0;
    int line_;
};

// expr := term (('+'|'-') term)*
// term := [sign] [p | p/q] ['*'] [param['^'k]] ['*'] variable
inline LinearForm parse_form_expr(const std::string& expr, int line,
                                  const std::vector<std::string>& vars,
                                  const std::optional<std::string>& param) {
    FormScanner sc(expr, line);
    LinearForm form;
    form.coeffs.assign(vars.size(), ParamPoly{});
    bool first = true;
    if (sc.at_end()) sc.fail("empty form expression");
    while (!sc.at_end()) {
        Rat sign(1);
        if (sc.try_consume('+')) {
            // explicit plus
        } else if (sc.try_consume('-')) {
            sign = -1;
        } else if (!first) {
            sc.fail("expected '+' or '-' between terms");
        }
        first = false;

        Rat coeff(1);
        if (auto p = sc.try_integer()) {
            Int num = *p;
            Int den = 1;
            if (sc.try_consume('/')) {
                auto q = sc.try_integer();
                if (!q) sc.fail("expected denominator after '/'");
                if (*q == 0) sc.fail("zero denominator");
                den = *q;
            }
            coeff = Rat(num, den);
            sc.try_consume('*');
        }

        int t_power = 0;
        auto ident = sc.try_identifier();
        if (param && ident && *ident == *param) {
            t_power = 1;
            if (sc.try_consume('^')) {
                auto k = sc.try_integer();
                if (!k) sc.fail("expected exponent after '^'");
                if (*k < 1 || *k > ParamPoly::max_degree)
                    sc.fail("parameter exponent must be between 1 and " +
                            std::to_string(ParamPoly::max_degree));
                t_power = k->convert_to<int>();
            }
            sc.try_consume('*');
            ident = sc.try_identifier();
        }

        if (!ident) sc.fail("expected a variable name (forms are homogeneous linear)");
        auto it = std::find(vars.begin(), vars.end(), *ident);
        if (it == vars.end()) sc.fail("unknown variable '" + *ident + "'");
        form.coeffs[it - vars.begin()].add_term(sign * coeff, t_power);
    }
    return form;
}

} // namespace detail

// Reads the line-oriented arrangement format: a `vars:` line, an optional
// `param:` line, then one `form:` line per hyperplane.
inline Arrangement parse_arrangement(std::istream& in) {
    Arrangement arr;
    bool have_vars = false;
    std::vector<int> form_lines;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::string body = line.substr(start);
        if (!body.empty() && body.back() == '\r') body.pop_back();

        auto key_is = [&](const char* key) {
            std::size_t n = std::string(key).size();
            return body.rfind(key, 0) == 0 && body.size() > n && body[n] == ':';
        };

        if (key_is("vars")) {
            if (have_vars) throw parse_error(line_no, 1, "duplicate vars line");
            if (!arr.forms.empty()) throw parse_error(line_no, 1, "vars must precede forms");
            std::istringstream vs(body.substr(5));
            std::string name;
            while (vs >> name) {
                if (!std::isalpha(static_cast<unsigned char>(name[0])) ||
                    !std::all_of(name.begin(), name.end(), [](char c) {
                        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                    }))
                    throw parse_error(line_no, 1, "invalid variable name '" + name + "'");
                if (std::find(arr.var_names.begin(), arr.var_names.end(), name) !=
                    arr.var_names.end())
                    throw parse_error(line_no, 1, "duplicate variable '" + name + "'");
                arr.var_names.push_back(name);
            }
            if (arr.var_names.empty()) throw parse_error(line_no, 1, "vars line lists no variables");
            if (arr.param_name && std::find(arr.var_names.begin(), arr.var_names.end(),
                                            *arr.param_name) != arr.var_names.end())
                throw parse_error(line_no, 1,
                                  "parameter '" + *arr.param_name + "' collides with a variable");
            arr.dim = static_cast<int>(arr.var_names.size());
            have_vars = true;
        } else if (key_is("param")) {
            if (arr.param_name) throw parse_error(line_no, 1, "more than one parameter declared");
            std::istringstream ps(body.substr(6));
            std::string name, extra;
            if (!(ps >> name) || (ps >> extra))
                throw parse_error(line_no, 1, "param line must name exactly one parameter");
            if (have_vars && std::find(arr.var_names.begin(), arr.var_names.end(), name) !=
                                 arr.var_names.end())
                throw parse_error(line_no, 1, "parameter '" + name + "' collides with a variable");
            arr.param_name = name;
        } else if (key_is("form")) {
            if (!have_vars) throw parse_error(line_no, 1, "form before vars line");
            LinearForm f = detail::parse_form_expr(body.substr(5), line_no, arr.var_names,
                                                   arr.param_name);
            if (f.is_zero()) throw parse_error(line_no, 1, "form is identically zero");
            arr.forms.push_back(std::move(f));
            form_lines.push_back(line_no);
        } else {
            throw parse_error(line_no, static_cast<int>(start) + 1,
                              "expected 'vars:', 'param:', 'form:' or a comment");
        }
    }
    if (!have_vars) throw parse_error(line_no, 1, "missing vars line");
    if (arr.forms.empty()) throw parse_error(line_no, 1, "arrangement has no forms");

    if (arr.is_param_free()) {
        for (std::size_t i = 0; i < arr.forms.size(); ++i)
            for (std::size_t j = i + 1; j < arr.forms.size(); ++j)
                if (proportional(arr.forms[i].constant_vector(), arr.forms[j].constant_vector()))
                    throw parse_error(form_lines[j], 1,
                                      "form " + std::to_string(j) + " is proportional to form " +
                                          std::to_string(i));
    }
    return arr;
}

inline Arrangement parse_arrangement(const std::string& text) {
    std::istringstream in(text);
    return parse_arrangement(in);
}

// Human-readable rendering of a parameter-free form, e.g. "x - 2y + z/3".
inline std::string format_form(const RatVec& row, const std::vector<std::string>& vars) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0) continue;
        Rat c = row[i];
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        Rat a = c < 0 ? Rat(-c) : c;
        if (a != 1) out += format_rat(a) + "*";
        out += vars[i];
    }
    return out.empty() ? "0" : out;
}

} // namespace arrmorse
