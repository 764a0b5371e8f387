from divisible_fwe.catalog.catalog_db import CatalogEntry, CatalogEntryPacker, CatalogFile, append_entry, \
    builtin_catalog, catalog_io, load_catalog, save_catalog
