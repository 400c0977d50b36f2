import os
from dotenv import load_dotenv
import yaml

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
os.chdir(project_root)


load_dotenv()


class Config:

    """
    Central configuration class.
    Loads resource ceilings from .env and defaults from config.yaml.
    """

    # --- RESOURCE CEILINGS (from .env) ---
    MAX_SERIES_TERMS = int(os.getenv("SCATTERING_MAX_SERIES_TERMS", "200000"))
    MAX_GRASSMANNIAN_CELLS = int(os.getenv("SCATTERING_MAX_GRASSMANNIAN_CELLS", "5000000"))

    # --- YAML CONFIGURATION ---
    with open(os.path.join(project_root, "config.yaml"), "r", encoding="utf-8") as f:
        yaml_config = yaml.safe_load(f)

    scattering_config = yaml_config.get("scattering", {})
    endpoint_config = yaml_config.get("endpoints", {})
    grassmannian_config = yaml_config.get("grassmannian", {})
    quiver_config = yaml_config.get("quivers", {})
    output_config = yaml_config.get("output", {})

    DEFAULT_ORDER = int(scattering_config.get("default_order", 8))
    DEFAULT_B = int(scattering_config.get("default_b", 2))
    THETA_ENDPOINT = str(endpoint_config.get("theta", "3/2,1"))
    STRATA_ENDPOINT = str(endpoint_config.get("strata", "2,1"))
    SAMPLE_PRIMES = list(grassmannian_config.get("primes", [2, 3, 5, 7, 11, 13]))
    AR_SEARCH_BOUND = int(grassmannian_config.get("ar_search_bound", 50))
    GOLDEN_DIR = os.path.join(project_root, output_config.get("golden_dir", "data/golden"))
    DEFAULT_FORMAT = output_config.get("format", "text")


settings = Config()
