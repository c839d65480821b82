"""
Exact information measures on finite-alphabet joint distributions.

All quantities are in bits. Zero-probability cells contribute nothing
(0 log 0 := 0), which scipy's `entr` already implements.
"""

from django.core.exceptions import ValidationError

from .models import label_set


def disjoint_label_sets(a, b, c):
    a, b, c = label_set(a), label_set(b), label_set(c)
    for left, right in ((a, b), (a, c), (b, c)):
        overlap = left & right
        if overlap:
            raise ValidationError(
                f'Label sets must be pairwise disjoint; {", ".join(sorted(overlap))} repeats.'
            )
    return a, b, c


def entropy(pmf, labels):
    """H(labels) in bits."""
    return pmf.entropy(labels)


def conditional_entropy(pmf, a, c=()):
    """H(A | C) in bits."""
    a, _, c = disjoint_label_sets(a, (), c)
    return pmf.entropy(a | c) - pmf.entropy(c)


def conditional_mi(pmf, a, b, c=()):
    """I(A; B | C) in bits.

    Evaluated as H(A,C) + H(B,C) - H(C) - H(A,B,C); rounding residue below
    zero is clipped so the result is always nonnegative.
    """
    a, b, c = disjoint_label_sets(a, b, c)
    if not a or not b:
        return 0.0
    value = pmf.entropy(a | c) + pmf.entropy(b | c) - pmf.entropy(c) - pmf.entropy(a | b | c)
    return max(value, 0.0)
