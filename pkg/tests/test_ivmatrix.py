import random

import numpy as np

from exfill.interval import ComplexInterval, Interval
from exfill.ivmatrix import CIMatrix, boxes_to_vector, vector_to_boxes


def rand_box(rng, scale=1.0):
    re = rng.uniform(-scale, scale)
    im = rng.uniform(-scale, scale)
    w = rng.uniform(0, 0.01 * scale)
    return ComplexInterval(Interval(re - w, re + w), Interval(im - w, im + w))


def sample(rng, box):
    return complex(
        rng.uniform(box.re.lo, box.re.hi), rng.uniform(box.im.lo, box.im.hi)
    )


def test_roundtrip_contains_rectangles():
    rng = random.Random(3)
    boxes = [[rand_box(rng) for _ in range(4)] for _ in range(3)]
    cim = CIMatrix.from_boxes(boxes)
    back = cim.to_boxes()
    for i in range(3):
        for j in range(4):
            assert back[i][j].contains_box(boxes[i][j])


def test_matmul_contains_sampled_products():
    rng = random.Random(11)
    n = 7
    a_boxes = [[rand_box(rng) for _ in range(n)] for _ in range(n)]
    b_boxes = [[rand_box(rng) for _ in range(n)] for _ in range(n)]
    A = CIMatrix.from_boxes(a_boxes)
    B = CIMatrix.from_boxes(b_boxes)
    C = (A @ B).to_boxes()
    for _ in range(40):
        am = np.array([[sample(rng, b) for b in row] for row in a_boxes])
        bm = np.array([[sample(rng, b) for b in row] for row in b_boxes])
        cm = am @ bm
        for i in range(n):
            for j in range(n):
                assert C[i][j].contains(cm[i][j])


def test_identity_minus_product():
    rng = random.Random(4)
    n = 5
    a_boxes = [[rand_box(rng) for _ in range(n)] for _ in range(n)]
    A = CIMatrix.from_boxes(a_boxes)
    Y = np.array([[sample(rng, b) for b in row] for row in a_boxes])
    M = CIMatrix.eye(n) - CIMatrix.exact(Y) @ A
    boxes = M.to_boxes()
    am = np.array([[sample(rng, b) for b in row] for row in a_boxes])
    exact = np.eye(n) - Y @ am
    for i in range(n):
        for j in range(n):
            assert boxes[i][j].contains(exact[i][j])


def test_vector_helpers():
    rng = random.Random(8)
    v = [rand_box(rng) for _ in range(6)]
    cim = boxes_to_vector(v)
    assert cim.shape == (6, 1)
    back = vector_to_boxes(cim)
    for orig, rt in zip(v, back):
        assert rt.contains_box(orig)
