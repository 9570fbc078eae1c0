import pytest

from spectile import GroupParams, GroupSet

SMALL_PARAMS = [
    GroupParams(2, 1),
    GroupParams(3, 1),
    GroupParams(2, 2),
    GroupParams(2, 3),
    GroupParams(3, 2),
]


@pytest.fixture(params=SMALL_PARAMS, ids=lambda q: f"p{q.p}n{q.n}")
def small_params(request):
    return request.param


def make_set(params: GroupParams, elems) -> GroupSet:
    return GroupSet.from_elements(params, elems)
