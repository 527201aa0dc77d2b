"""Rate-limited Wikidata description lookup for Location enrichment.

Uses the public entity-search endpoint (wbsearchentities) and takes the
top-ranked hit's description. Override the endpoint via the
CLIMAKG_WIKIDATA_ENDPOINT environment variable; the test suite never talks
to the network and uses offline fixture maps instead.
"""
from __future__ import annotations

import logging
import os
import time
from typing import Optional

import requests

log = logging.getLogger(__name__)

DEFAULT_ENDPOINT = "https://www.wikidata.org/w/api.php"
ENDPOINT_ENV_VAR = "CLIMAKG_WIKIDATA_ENDPOINT"
MIN_REQUEST_INTERVAL = 0.2  # seconds between requests


class WikidataClient:
    def __init__(self, endpoint: Optional[str] = None, timeout: float = 5.0,
                 session: Optional[requests.Session] = None):
        self.endpoint = endpoint or os.environ.get(ENDPOINT_ENV_VAR, DEFAULT_ENDPOINT)
        self.timeout = timeout
        self.session = session or requests.Session()
        self._last_request = 0.0

    def describe(self, name: str) -> Optional[str]:
        """Description of the top search hit for ``name``, or None."""
        self._throttle()
        response = self.session.get(
            self.endpoint,
            params={
                "action": "wbsearchentities",
                "search": name,
                "language": "en",
                "format": "json",
                "limit": 1,
            },
            timeout=self.timeout,
        )
        response.raise_for_status()
        hits = response.json().get("search", [])
        if not hits:
            return None
        return hits[0].get("description")

    def _throttle(self) -> None:
        elapsed = time.monotonic() - self._last_request
        if elapsed < MIN_REQUEST_INTERVAL:
            time.sleep(MIN_REQUEST_INTERVAL - elapsed)
        self._last_request = time.monotonic()
