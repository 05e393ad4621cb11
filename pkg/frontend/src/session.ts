/** Admin token kept in session storage — gone when the tab closes. */

const TOKEN_KEY = "rthkp.admin.token";

export interface TokenStore {
  get(): string | null;
  set(token: string | null): void;
}

export function sessionTokenStore(storage: Storage): TokenStore {
  return {
    get: () => storage.getItem(TOKEN_KEY),
    set: (token) => {
      if (token === null) storage.removeItem(TOKEN_KEY);
      else storage.setItem(TOKEN_KEY, token);
    },
  };
}

/** In-memory stand-in with the same contract. */
export function memoryTokenStore(initial: string | null = null): TokenStore {
  let token = initial;
  return {
    get: () => token,
    set: (next) => {
      token = next;
    },
  };
}
