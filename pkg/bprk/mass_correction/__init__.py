# Mass correction
