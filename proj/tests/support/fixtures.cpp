#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace mbtr::testing {

Rows random_rows(std::mt19937_64& rng, std::size_t n, std::size_t d, bool nonnegative) {
  std::uniform_real_distribution<double> dist(nonnegative ? 0.0 : -1.0, 1.0);
  Rows out(n, std::vector<double>(d));
  for (auto& row : out)
    for (auto& x : row) x = dist(rng);
  return out;
}

Matrix to_matrix(const Rows& rows) { return Matrix::from_rows(rows); }

Rows to_rows(const Matrix& m) {
  Rows out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

std::vector<std::string> word_list(std::size_t count, std::string_view prefix) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string w(prefix);
    std::size_t k = i;
    do {
      w += static_cast<char>('a' + k % 26);
      k /= 26;
    } while (k > 0);
    w += "x";  // keeps every word clear of the stopword list
    out.push_back(w);
  }
  return out;
}

std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t count, std::size_t vocabulary) {
  static const auto words = word_list(64, "t");
  std::uniform_int_distribution<std::size_t> pick(0, std::min(vocabulary, words.size()) - 1);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(words[pick(rng)]);
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::vector<MultiQueryUnit> multi_query_fixture(std::uint64_t seed, std::size_t units) {
  std::mt19937_64 rng(seed);
  const auto vocab = word_list(4000, "m");
  std::size_t next = 0;
  auto fresh = [&] { return vocab[next++ % vocab.size()]; };
  constexpr std::size_t kLength = 6;

  std::vector<MultiQueryUnit> out;
  for (std::size_t u = 0; u < units; ++u) {
    MultiQueryUnit unit;
    std::vector<std::vector<std::string>> q(3);
    for (auto& terms : q)
      for (int t = 0; t < 3; ++t) terms.push_back(fresh());
    for (const auto& terms : q) unit.queries.push_back(join_tokens(terms));

    std::vector<std::vector<std::string>> sentences;
    std::vector<std::string> target = {q[0][0], q[1][0], q[2][0]};
    while (target.size() < kLength) target.push_back(fresh());
    sentences.push_back(target);
    const std::size_t distractors = 3 + rng() % 4;
    for (std::size_t d = 0; d < distractors; ++d) {
      const auto& terms = q[d % 3];
      std::vector<std::string> s = {terms[1], terms[2]};
      while (s.size() < kLength) s.push_back(fresh());
      sentences.push_back(s);
    }
    std::shuffle(sentences.begin(), sentences.end(), rng);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      std::shuffle(sentences[i].begin(), sentences[i].end(), rng);
      if (std::find(sentences[i].begin(), sentences[i].end(), q[0][0]) != sentences[i].end()) unit.target = i;
      unit.sentences.push_back(join_tokens(sentences[i]));
    }
    out.push_back(std::move(unit));
  }
  return out;
}

std::vector<LengthUnit> length_fixture(std::uint64_t seed, std::size_t units, std::size_t guide_length) {
  std::mt19937_64 rng(seed);
  const auto vocab = word_list(6000, "l");
  std::size_t next = 0;
  auto fresh = [&] { return vocab[next++ % vocab.size()]; };

  std::vector<LengthUnit> out;
  for (std::size_t u = 0; u < units; ++u) {
    LengthUnit unit;
    std::vector<std::string> query;
    for (int t = 0; t < 4; ++t) query.push_back(fresh());
    unit.query = join_tokens(query);
    const std::size_t n = 5 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      // Sentence 0 matches the guide length exactly, so some bias always
      // survives the penalty.
      const std::size_t length = i == 0 ? guide_length : guide_length + 1 + rng() % 12;
      const std::size_t shared = 1 + rng() % 4;
      std::vector<std::string> s(query.begin(), query.begin() + static_cast<std::ptrdiff_t>(shared));
      while (s.size() < length) s.push_back(fresh());
      std::shuffle(s.begin(), s.end(), rng);
      unit.sentences.push_back(join_tokens(s));
    }
    std::shuffle(unit.sentences.begin(), unit.sentences.end(), rng);
    out.push_back(std::move(unit));
  }
  return out;
}

std::vector<EssUnit> planted_reference_dataset(std::uint64_t seed, std::size_t units) {
  std::mt19937_64 rng(seed);
  const auto vocab = word_list(300, "p");
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  auto sentence = [&](std::size_t length) {
    std::string s;
    for (std::size_t i = 0; i < length; ++i) {
      if (i) s += ' ';
      s += vocab[pick(rng)];
    }
    return s + ".";
  };
  std::vector<EssUnit> out;
  for (std::size_t u = 0; u < units; ++u) {
    EssUnit unit;
    unit.id = "planted-" + std::to_string(u);
    unit.entity = "Gadget " + std::to_string(u);
    unit.sentiment = u % 2 ? Sentiment::kNegative : Sentiment::kPositive;
    const std::string reference = sentence(5 + rng() % 8);
    const std::size_t docs = 1 + rng() % 3;
    const std::size_t host = rng() % docs;
    for (std::size_t d = 0; d < docs; ++d) {
      std::string doc = sentence(4 + rng() % 10) + " " + sentence(4 + rng() % 10);
      if (d == host) doc += " " + reference;
      doc += " " + sentence(4 + rng() % 10);
      unit.documents.push_back(doc);
    }
    unit.reference = reference;
    out.push_back(std::move(unit));
  }
  return out;
}

std::vector<EssUnit> review_dataset() {
  struct Product {
    const char* entity;
    Sentiment sentiment;
    const char* reference;
  };
  const std::vector<Product> products = {
      {"Acme Router", Sentiment::kPositive, "The signal is strong and the setup was simple."},
      {"Zeta Phone", Sentiment::kNegative, "The battery drains fast and the screen cracked."},
      {"Nova Blender", Sentiment::kPositive, "It crushes ice quickly and cleans easily."},
      {"Orbit Lamp", Sentiment::kNegative, "The lamp flickers and the switch broke."},
      {"Pixel Kettle", Sentiment::kPositive, "The kettle boils water quickly and looks great."},
      {"Terra Drill", Sentiment::kNegative, "The drill overheats and the battery died."},
      {"Luna Speaker", Sentiment::kPositive, "The sound is clear and the bass is deep."},
      {"Echo Mouse", Sentiment::kNegative, "The scroll wheel stopped working after a month."},
  };
  std::vector<EssUnit> out;
  for (std::size_t i = 0; i < products.size(); ++i) {
    const auto& s = products[i];
    const std::string e = s.entity;
    EssUnit unit;
    unit.id = "r" + std::to_string(i);
    unit.entity = e;
    unit.sentiment = s.sentiment;
    unit.documents = {
        "I bought the " + e + " last spring. " + std::string(s.reference) +
            " Customer service answered my questions quickly.",
        "The " + e + " arrived in a plain box. Delivery took a week. The price was fair for what you get.",
        "My brother recommended the " + e + ". The setup guide is excellent and short. "
            "The design does not feel cheap at all.",
    };
    unit.reference = s.reference;
    out.push_back(std::move(unit));
  }
  return out;
}

TempPath::TempPath(std::string_view stem) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          (std::string(stem) + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
}

TempPath::~TempPath() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace mbtr::testing
