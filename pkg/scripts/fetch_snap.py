#!/usr/bin/env python3
"""Download the SNAP edge lists used by the ingestion checks.

The files land in data/snap/ as gzipped edge lists; `pdcm ingest` and the
acceptance tests read .gz directly, so nothing is unpacked.  Tests skip
dataset-backed checks when the files are absent, making this script the
only step that touches the network.

    python3 scripts/fetch_snap.py            # the two small datasets
    python3 scripts/fetch_snap.py --all      # also soc-LiveJournal1 (~1 GB)
"""
import argparse
import sys
import urllib.request
from pathlib import Path

BASE = "https://snap.stanford.edu/data"

# name -> (filename, approximate download size)
DATASETS = {
    "wiki-Vote": ("wiki-Vote.txt.gz", "1 MB"),
    # the Slashdot social network, February 2009 crawl
    "soc-Slashdot0902": ("soc-Slashdot0902.txt.gz", "11 MB"),
    "soc-LiveJournal1": ("soc-LiveJournal1.txt.gz", "1.0 GB"),
}
DEFAULT = ("wiki-Vote", "soc-Slashdot0902")


def fetch(name: str, dest_dir: Path, force: bool) -> Path:
    filename, size = DATASETS[name]
    dest = dest_dir / filename
    if dest.exists() and not force:
        print(f"{dest} already present, skipping")
        return dest
    url = f"{BASE}/{filename}"
    print(f"fetching {url} ({size}) ...")
    tmp = dest.with_suffix(dest.suffix + ".part")
    with urllib.request.urlopen(url) as resp, open(tmp, "wb") as out:
        while chunk := resp.read(1 << 20):
            out.write(chunk)
    tmp.rename(dest)
    print(f"  -> {dest} ({dest.stat().st_size:,} bytes)")
    return dest


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", choices=[*DATASETS, []],
                    help=f"datasets to fetch (default: {' '.join(DEFAULT)})")
    ap.add_argument("--all", action="store_true",
                    help="fetch every known dataset, including LiveJournal")
    ap.add_argument("--dest", default=Path(__file__).parent.parent / "data" / "snap",
                    type=Path)
    ap.add_argument("--force", action="store_true", help="re-download")
    args = ap.parse_args(argv)

    names = list(DATASETS) if args.all else (args.names or list(DEFAULT))
    args.dest.mkdir(parents=True, exist_ok=True)
    for name in names:
        try:
            fetch(name, args.dest, args.force)
        except OSError as exc:
            print(f"failed to fetch {name}: {exc}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
