import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twocolor import bijections as bij
from twocolor import families as fam
from twocolor import verify as ver
from twocolor.families import GREEN, RED, ProfileWord, TwoColorPartition, parse_colored
from twocolor.partitions import (
    DomainError,
    Partition,
    durfee_side,
    from_triple,
    parse_partition,
    parse_triple,
)

C = parse_colored
W = ProfileWord


# -- strategies --------------------------------------------------------------

colored_parts = st.lists(
    st.tuples(st.integers(1, 30), st.sampled_from([RED, GREEN])),
    max_size=7,
    unique_by=lambda t: t[0],
)


def nkl(stats):
    return stats.n, stats.k, stats.l


def to_colored(parts):
    return TwoColorPartition(tuple(sorted(parts, key=lambda t: -t[0])))


def in_family(d):
    return colored_parts.map(to_colored).filter(lambda p: fam.is_in_Ld(d, p))


# -- phi ---------------------------------------------------------------------


def phi_by_positions(p):
    """Word by direct placement: a part of value v puts its letter at
    position v minus the number of green parts at or below it."""
    letters = {}
    greens = 0
    for v, c in reversed(p.parts):
        greens += c is GREEN
        letters[v - greens] = "x" if c is RED else "z"
    length = max(letters, default=0)
    return "".join(letters.get(i, "y") for i in range(1, length + 1))


@pytest.mark.parametrize(
    "src, word",
    [("12g+8g+6r+4r+3g+1r", "xzxyxzyyz"), ("0", ""), ("3r+1r", "xyx"), ("6g+1r", "xyyyz")],
)
def test_phi_examples(src, word):
    p = C(src)
    assert bij.phi(p).letters == word == phi_by_positions(p)
    assert fam.word_weight(word) == p.weight
    assert bij.phi_inverse(W(word)) == p


def test_phi_running_example_weight():
    assert fam.word_weight(bij.phi(C("12g+8g+6r+4r+3g+1r"))) == 34


def test_phi_rejects_non_members():
    with pytest.raises(DomainError, match="green gap"):
        bij.phi(C("2g+1r"))
    with pytest.raises(DomainError):
        bij.phi_inverse(W("xy"))


@settings(max_examples=300)
@given(in_family(1))
def test_phi_properties(p):
    w = bij.phi(p)
    assert w.letters == phi_by_positions(p)
    assert nkl(fam.word_stats(w)) == nkl(fam.ld_stats(p))
    assert bij.phi_inverse(w) == p


def test_phi_sweep_small():
    assert ver.check_phi(14).passed


# -- psi ---------------------------------------------------------------------


def test_psi_running_example():
    pair = bij.psi(W("xzxyxzyyz"))
    assert pair.pi == Partition.of(8, 6, 4, 2)
    assert pair.sigma == Partition.of(8, 4, 2)
    assert fam.is_in_A(pair.as_colored()) == fam.FamilyStats(34, 3, 3, 1)
    assert bij.psi_inverse(pair) == W("xzxyxzyyz")


def test_psi_trace_exposes_the_intermediate_word():
    tr = bij.psi_trace(W("xzxyxzyyz"))
    assert tr.z_positions == (9, 6, 2)
    assert tr.sigma_parts == (8, 4, 2)
    assert tr.prefix == "yxy"
    assert tr.u_hat == "yxy" + "xyxyxyyyy"


@pytest.mark.parametrize(
    "word, pi, sigma",
    [("", "0", "0"), ("x", "1", "0"), ("z", "0", "2"), ("zz", "0", "4+2")],
)
def test_psi_small_words(word, pi, sigma):
    pair = bij.psi(W(word))
    assert pair == bij.PartitionPair(parse_partition(pi), parse_partition(sigma))
    assert bij.psi_inverse(pair).letters == word


def test_psi_rejects_trailing_y():
    with pytest.raises(DomainError):
        bij.psi(W("xy"))


def test_pair_validation():
    with pytest.raises(DomainError):
        bij.PartitionPair(Partition.of(2, 2), Partition())
    with pytest.raises(DomainError):
        bij.PartitionPair(Partition(), Partition.of(3))


def test_pair_text_round_trip():
    pair = bij.psi(W("xzxyxzyyz"))
    assert bij.pair_to_text(pair) == "pi=8+6+4+2 sigma=8+4+2"
    assert bij.parse_pair(bij.pair_to_text(pair)) == pair
    assert bij.pair_to_json(pair) == {"pi": [8, 6, 4, 2], "sigma": [8, 4, 2]}
    with pytest.raises(DomainError):
        bij.parse_pair("pi=1")


def test_psi_is_a_bijection_onto_A_small():
    for n in range(16):
        images = [bij.psi(w) for w in fam.enumerate_W(n)]
        assert len(set(images)) == len(images)
        assert {p.as_colored() for p in images} == set(fam.enumerate_A(n))


@settings(max_examples=200)
@given(in_family(1))
def test_psi_after_phi_preserves_stats_and_inverts(p):
    w = bij.phi(p)
    pair = bij.psi(w)
    assert fam.is_in_A(pair.as_colored()) == fam.word_stats(w)
    assert bij.psi_inverse(pair) == w
    assert ver.psi_claims(w) is None


def test_letter_contributions():
    assert ver.letter_contributions("xzxyxzyyz") == [1, 3, 4, 0, 6, 8, 0, 0, 12]
    assert sum(ver.letter_contributions("xzxyxzyyz")) == 34


# -- 2-indented peel ---------------------------------------------------------


def test_two_indent_five_part_example():
    peel = bij.two_indent(C("14r+12g+8g+5r+2g"))
    assert peel.lambda_tilde == Partition.of(5, 5, 3, 2, 1)
    assert peel.green_columns == {5, 3, 1}


def test_two_indent_small():
    assert bij.two_indent(C("3r")).lambda_tilde == Partition.of(2)
    peel = bij.two_indent(C("13g+4r+1r"))
    assert peel.lambda_tilde == Partition.of(8, 1)
    assert peel.green_columns == {8}
    assert bij.two_indent(C("3r+1r")).lambda_tilde == Partition()


def test_two_indent_rejects_non_members():
    with pytest.raises(DomainError):
        bij.two_indent(C("5r+4r"))
    with pytest.raises(DomainError):
        bij.two_indent(C("3r"), m=2)


# -- eta ---------------------------------------------------------------------


def test_eta_five_part_example():
    t = bij.eta(C("14r+12g+8g+5r+2g"))
    assert str(t) == "(5; 5+3+2+2; 4)"
    assert from_triple(t) == Partition.of(6, 6, 6, 6, 5, 5, 3, 2, 2)
    assert bij.eta_inverse(t) == C("14r+12g+8g+5r+2g")


def test_eta_small_examples():
    assert str(bij.eta(C("0"))) == "(0; ; )"
    # lambda-tilde = 5+1 so the columns are 2+1+1+1+1, all of green length
    t = bij.eta(C("10g+4g+1r"))
    assert str(t) == "(3; 2+1+1+1+1; )"
    assert str(t) in {str(b) for b in fam.enumerate_B(15, 1, 2)}
    assert bij.eta_inverse(t) == C("10g+4g+1r")
    assert bij.eta_inverse(parse_triple("(3; 3+1+1+1; )")) == C("9g+4r+2g")


def test_eta_rejects():
    with pytest.raises(DomainError):
        bij.eta(C("3g+1r"))
    with pytest.raises(DomainError):
        bij.eta_inverse(parse_triple("(2; 1+1; 1)"))


@settings(max_examples=300)
@given(in_family(2))
def test_eta_properties(p):
    t = bij.eta(p)
    st_ = fam.ld_stats(p)
    assert fam.is_basis(t)
    assert nkl(fam.b_stats(t)) == nkl(st_)
    assert len(set(t.pi.parts)) == st_.l
    assert bij.eta_inverse(t) == p


def test_eta_sweep_small():
    assert ver.check_eta(16).passed


# -- theta -------------------------------------------------------------------


def test_theta_example():
    tr = bij.theta_trace(C("13g+4r+1r"))
    assert tr.pi == Partition.of(1)
    assert tr.sigma == Partition.of(2, 1, 1, 1, 1, 1, 1)
    assert tr.image == Partition.of(10, 4, 3, 1)
    assert bij.theta_inverse(tr.image) == C("13g+4r+1r")
    assert bij.theta(C("0")) == Partition()


def test_theta_lands_on_the_listed_set():
    images = {str(bij.theta(p)) for p in fam.enumerate_Ld(3, 18, 2, 1)}
    assert images == {str(q) for q in fam.enumerate_D(18, 2, 1)}


def test_theta_inverse_rejects():
    with pytest.raises(DomainError):
        bij.theta_inverse(Partition.of(2, 2))
    # any strict partition has at most twice its Durfee side in parts
    assert bij.theta_inverse(Partition.of(4, 3, 2, 1)) == C("7g+3g")


@settings(max_examples=300)
@given(in_family(3))
def test_theta_properties(p):
    q = bij.theta(p)
    st_ = fam.ld_stats(p)
    assert q.is_strict()
    assert len(q) == st_.k + 2 * st_.l
    assert durfee_side(q) == st_.k + st_.l
    assert ver.theta_facts(p) is None
    assert bij.theta_inverse(q) == p


def test_eta_and_theta_differ_on_L3():
    # both start from the same peel but split the columns differently
    p = C("3g")
    assert str(bij.eta(p)) == "(1; 1+1; )"
    assert bij.theta(p) == Partition.of(2, 1)
    assert from_triple(bij.eta(p)) != bij.theta(p)


def test_theta_sweep_small():
    assert ver.check_theta(18).passed
