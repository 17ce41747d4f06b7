from concurrent.futures import ThreadPoolExecutor
from dotenv import load_dotenv
import os

from ..exceptions import InvalidInputError
from .polyring import enumerate_monic

load_dotenv()


def thread_count():
    raw = os.getenv("FFZETA_THREADS", "1")
    try:
        threads = int(raw)
    except ValueError:
        raise InvalidInputError(detail={
            'message': 'FFZETA_THREADS must be an integer',
            'value': raw})
    if threads < 1:
        raise InvalidInputError(detail={
            'message': 'FFZETA_THREADS must be at least 1',
            'value': threads})
    return threads


def chunked_sum(spec, d, summarize, merge, zero):
    """
    Applies summarize to each of the q chunks of the monic polynomials of
    degree d and merges the partial results in chunk order.
    """
    if d == 0:
        return merge(zero, summarize(enumerate_monic(spec, 0)))
    chunks = range(spec.q)
    threads = min(thread_count(), spec.q)
    if threads == 1:
        partials = [summarize(enumerate_monic(spec, d, c)) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            partials = list(ex.map(
                lambda c: summarize(enumerate_monic(spec, d, c)), chunks))
    total = zero
    for part in partials:
        total = merge(total, part)
    return total
