# API routes package: one click command per CLI verb
